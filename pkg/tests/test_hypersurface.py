import numpy as np
import pytest

from src.errors import (
    GeometryError, GradientDegenerateError, InvalidToleranceError, NonConvergenceError,
    NotOnHypersurfaceError, NotRealValuedError,
)
from src.expr import VarSpace, parse
from src.geometry import Hypersurface
from src.models import ToleranceConfig


def test_sphere_gradient_and_hessian(sphere):
    p = np.array([0.6, 0.8j])
    np.testing.assert_allclose(sphere.gradient(p), np.conj(p))
    np.testing.assert_allclose(sphere.complex_hessian(p), np.eye(2))


def test_dimensions(weighted):
    assert weighted.N == 3
    assert weighted.n == 2
    assert "Re(w)" in repr(weighted)


def test_rejects_complex_defining_function():
    with pytest.raises(NotRealValuedError):
        Hypersurface.from_source("z1 + abs2(z2)", 2)


def test_rejects_variables_beyond_dimension():
    tree = parse("abs2(z1) + abs2(z3)", VarSpace.ambient(3))
    with pytest.raises(GeometryError):
        Hypersurface(tree, 2)


def test_custom_variable_names():
    H = Hypersurface.from_source("abs2(a) + abs2(b) - 1", 2, names=["a", "b"])
    assert H.value([1, 0]) == pytest.approx(0.0)


def test_project_sphere_along_gradient(sphere):
    x = sphere.project_to_M([2, 0])
    np.testing.assert_allclose(x.p, [1, 0], atol=1e-12)
    assert x.residual <= 1e-12


def test_project_with_fixed_direction(weighted):
    seed = np.array([0.3, 0.2 - 0.1j, 0.5 + 0.7j])
    x = weighted.project_to_M(seed, direction=[0, 0, 1])
    # only w moves, and only its real part
    np.testing.assert_allclose(x.p[:2], seed[:2], atol=1e-15)
    assert x.p[2].imag == pytest.approx(0.7)
    assert abs(weighted.value(x.p)) <= 1e-12


def test_projection_fails_where_gradient_vanishes():
    H = Hypersurface.from_source("abs2(z1) + abs2(z2) + 1", 2)
    with pytest.raises((NonConvergenceError, GradientDegenerateError)):
        H.project_to_M([0.5, 0.5])


def test_projection_from_critical_point(sphere):
    with pytest.raises(GradientDegenerateError):
        sphere.project_to_M([0, 0])


def test_projection_reports_non_convergence():
    H = Hypersurface.from_source("abs2(z1) + abs2(z2) - 1", 2, tolerances=ToleranceConfig(newton_max_iter=1))
    with pytest.raises(NonConvergenceError):
        H.project_to_M([5, 5])


def test_seed_shape_is_checked(sphere):
    with pytest.raises(GeometryError):
        sphere.project_to_M([1, 0, 0])


def test_point_at_rejects_points_off_m(sphere):
    with pytest.raises(NotOnHypersurfaceError):
        sphere.point_at([0.5, 0])


@pytest.mark.parametrize("seed", [[0.3, 0.2 - 0.1j, 0.5 + 0.7j], [-0.9, 1j, 0.1], [0.05, 0.05, -0.3j]])
def test_frame_is_orthonormal_and_tangent(weighted, seed):
    x = weighted.project_to_M(seed)
    B = x.frame
    assert B.shape == (2, 3)
    np.testing.assert_allclose(B @ B.conj().T, np.eye(2), atol=1e-12)
    np.testing.assert_allclose(B @ x.gradient, 0, atol=1e-12)


def test_frame_pivot_is_largest_gradient_entry(sphere):
    x = sphere.point_at([0.6, 0.8])
    # pivot z2: the raw row is e1 - (g1/g2) e2
    expected = np.array([1, -0.6 / 0.8]) / np.linalg.norm([1, -0.6 / 0.8])
    np.testing.assert_allclose(x.frame[0], expected, atol=1e-14)


def test_frame_needs_gradient(sphere):
    with pytest.raises(GradientDegenerateError):
        sphere.cr_frame([0, 0])


def test_point_helpers(sphere):
    x = sphere.point_at([0.6, 0.8j])
    np.testing.assert_allclose(x.real_coordinates(), [0.6, 0, 0, 0.8])
    assert x.cr_dimension == 1
    assert x.distance_to(sphere.point_at([0.6, 0.8j])) == 0.0


@pytest.mark.parametrize("values", [{"eig_zero_tol": 0}, {"rank_tol": -1e-3}, {"newton_max_iter": 2.5}])
def test_tolerances_must_be_positive(values):
    with pytest.raises(InvalidToleranceError):
        ToleranceConfig(**values)


def test_relaxed_tolerances():
    relaxed = ToleranceConfig().relaxed(10)
    assert relaxed.eig_zero_tol == pytest.approx(1e-6)
    assert relaxed.rank_tol == ToleranceConfig().rank_tol


def random_points(rng, dimension, count):
    return rng.uniform(-1, 1, size=(count, dimension)) + 1j * rng.uniform(-1, 1, size=(count, dimension))


def test_frame_completes_to_a_unitary_matrix(example, rng):
    for seed in random_points(rng, example.N, 20):
        x = example.project_to_M(seed)
        normal = np.conj(x.gradient) / np.linalg.norm(x.gradient)
        U = np.vstack([x.frame, normal])
        np.testing.assert_allclose(U @ U.conj().T, np.eye(example.N), atol=1e-8)


def test_projection_is_idempotent(example, rng):
    tol = example.tolerances.newton_tol
    for seed in random_points(rng, example.N, 20):
        x = example.project_to_M(seed)
        assert np.linalg.norm(example.project_to_M(x.p).p - x.p) <= 10 * tol


def test_complex_hessian_is_hermitian(example, rng):
    for p in random_points(rng, example.N, 100):
        hessian = example.complex_hessian(p)
        np.testing.assert_allclose(hessian, hessian.conj().T, atol=1e-12)
