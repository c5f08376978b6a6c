import numpy as np
import pytest

from src.errors import (
    EvaluationError, ExpressionSyntaxError, InvalidExponentError, UnknownVariableError,
)
from src.expr import (
    Add, Const, Div, Pow, Var, VarSpace, compile_expr, conjugate, evaluate, is_real_valued, normalize, parse,
    to_source, tokenize, wirtinger_dz, wirtinger_dzbar,
)
from src.geometry import Hypersurface
from tests.conftest import EXAMPLES

C2 = VarSpace.ambient(2)
C3 = VarSpace.ambient(3)


def test_tokenize_records_byte_offsets():
    tokens = tokenize("Re(w) + 2")
    assert [t.text for t in tokens] == ["Re", "(", "w", ")", "+", "2", ""]
    assert tokens[4].offset == 6
    assert tokens[-1].kind == "end"


def test_parse_resolves_w_as_last_variable():
    assert parse("w", C3) == Var(3)
    assert parse("conj(z1)", C3) == Var(1, conjugated=True)


def test_parse_folds_constants():
    assert parse("2*3 - 1", C2) == Const(5 + 0j)
    assert parse("-i", C2) == Const(-1j)
    assert parse("0.5 + 0.25*i", C2) == Const(0.5 + 0.25j)


def test_parse_respects_precedence():
    tree = parse("z1 + z2^2", C2)
    assert isinstance(tree, Add)
    assert tree.right == Pow(Var(2), 2)


@pytest.mark.parametrize("source, offset", [
    ("Re(w) + $", 8),
    ("z1 +", 4),
    ("(z1 + z2", 8),
    ("z1 z2", 3),
])
def test_syntax_errors_carry_offset(source, offset):
    with pytest.raises(ExpressionSyntaxError) as info:
        parse(source, C2)
    assert info.value.offset == offset


def test_unknown_variable():
    with pytest.raises(UnknownVariableError) as info:
        parse("z1 + q", C2)
    assert info.value.offset == 5


@pytest.mark.parametrize("source", ["z1^-1", "z1^1.5", "z1^z2"])
def test_invalid_exponents(source):
    with pytest.raises(InvalidExponentError):
        parse(source, C2)


def test_division_by_constant_zero_is_a_syntax_error():
    with pytest.raises(ExpressionSyntaxError):
        parse("z1 / 0", C2)


def test_evaluation_error_names_the_division():
    tree = parse("1 / z1", C2)
    with pytest.raises(EvaluationError) as info:
        evaluate(tree, [0, 1])
    assert isinstance(info.value.subexpression, Div)


def test_compiled_matches_tree_walk(rng):
    tree = parse("Re(w) + abs2(z1*z2) - Im(z1)^3 / (2 + abs2(z2))", C3)
    fast = compile_expr(tree)
    for _ in range(20):
        p = rng.standard_normal(3) + 1j * rng.standard_normal(3)
        assert fast(p) == pytest.approx(evaluate(tree, p), rel=1e-12, abs=1e-12)


def test_compiled_division_by_zero_raises_evaluation_error():
    with pytest.raises(EvaluationError):
        compile_expr(parse("1 / z1", C2))([0, 1])


@pytest.mark.parametrize("name", sorted(EXAMPLES))
def test_print_parse_round_trip(name):
    source, dimension = EXAMPLES[name]
    space = VarSpace.ambient(dimension)
    tree = parse(source, space)
    assert parse(to_source(tree, space), space) == tree


def test_round_trip_of_complex_and_negative_constants():
    tree = parse("(0.5 - 2*i) * z1 + (-3) * conj(z2) - i", C2)
    assert parse(to_source(tree, C2), C2) == tree


def test_normalize_removes_re_im_abs2():
    tree = normalize(parse("Re(z1) + Im(z2) + abs2(z1) + conj(z1*z2)", C2))
    names = {type(node).__name__ for node in tree.walk()}
    assert not names & {"RealPart", "ImagPart", "Abs2", "Conj"}


def test_real_valuedness():
    assert is_real_valued(parse("Re(w) + abs2(z1)", C3)).method == "structural"
    assert is_real_valued(parse("z1 * conj(z2) + z2 * conj(z1)", C2))
    check = is_real_valued(parse("abs2(z1) + z1", C2))
    assert not check
    assert check.witness is not None


def test_wirtinger_of_real_part():
    assert wirtinger_dzbar(parse("Re(w)", C2), 2) == Const(0.5 + 0j)
    assert wirtinger_dz(parse("Re(w)", C2), 1) == Const(0j)


def test_wirtinger_of_abs2_power():
    tree = parse("abs2(z1)^2", C2)
    derivative = compile_expr(wirtinger_dz(tree, 1))
    p = [0.3 - 0.4j, 0]
    # d/dz (z zbar)^2 = 2 z zbar^2
    assert derivative(p) == pytest.approx(2 * p[0] * np.conj(p[0]) ** 2)


def _fd_wirtinger(f, p, j, step=1e-5):
    e = np.zeros(len(p), dtype=complex)
    e[j] = 1
    dx = (f(p + step * e) - f(p - step * e)) / (2 * step)
    dy = (f(p + 1j * step * e) - f(p - 1j * step * e)) / (2 * step)
    return 0.5 * (dx - 1j * dy), 0.5 * (dx + 1j * dy)


@pytest.mark.parametrize("name", sorted(EXAMPLES))
def test_symbolic_derivatives_match_finite_differences(name):
    source, dimension = EXAMPLES[name]
    H = Hypersurface.from_source(source, dimension)
    rng = np.random.default_rng(8)
    for _ in range(50):
        p = 0.7 * (rng.standard_normal(dimension) + 1j * rng.standard_normal(dimension))
        gradient = H.gradient(p)
        hessian = H.complex_hessian(p)
        for j in range(dimension):
            dz, _ = _fd_wirtinger(lambda q: complex(H.value(q)), p, j)
            assert abs(gradient[j] - dz) <= 1e-6 * max(1.0, abs(gradient[j]))
            for k in range(dimension):
                _, dzbar = _fd_wirtinger(lambda q: H.gradient(q)[j], p, k)
                assert abs(hessian[j, k] - dzbar) <= 1e-6 * max(1.0, abs(hessian[j, k]))


def test_parameter_space_aliases_u():
    space = VarSpace.parameters(1)
    assert parse("u", space) == parse("u1", space)
    with pytest.raises(UnknownVariableError):
        parse("u", VarSpace.parameters(2))


@pytest.mark.parametrize("source", [
    *(EXAMPLES[name][0] for name in sorted(EXAMPLES)),
    "z1 * conj(z2)^2 + z2 / (1 + abs2(z1))",
    "(2 - i) * Im(z1 * z2) + conj(z1)^3",
])
def test_conjugate_swaps_wirtinger_derivatives(source, rng):
    tree = parse(source, C3)
    for j in (1, 2, 3):
        lhs = compile_expr(wirtinger_dzbar(conjugate(tree), j))
        rhs = compile_expr(wirtinger_dz(tree, j))
        for _ in range(10):
            p = rng.standard_normal(3) + 1j * rng.standard_normal(3)
            assert lhs(p) == pytest.approx(np.conj(rhs(p)), rel=1e-12, abs=1e-12)


def test_compiled_covers_every_node_type(rng):
    tree = parse("-conj(z1) + Re(z2)*Im(w) - abs2(z1 - w)^2 / (3 + z2*conj(z2))", C3)
    fast = compile_expr(tree)
    for _ in range(20):
        p = rng.standard_normal(3) + 1j * rng.standard_normal(3)
        assert fast(p) == pytest.approx(evaluate(tree, p), rel=1e-12, abs=1e-12)
