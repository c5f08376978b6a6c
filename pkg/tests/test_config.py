import json

import pytest

from src.config import apply_overrides, load_problem_config, parse_problem_config
from src.errors import ConfigurationError
from src.models import ToleranceConfig
from tests.conftest import RANK_ONE, SPHERE


def test_defaults():
    config = parse_problem_config({"rho": SPHERE, "dimension": 2})
    assert config.region.bounds == ((-1.0, 1.0),) * 4
    assert config.region.resolution == (3,) * 4
    assert config.region.seed == 0
    assert config.region.jitter == 0.25
    assert config.tolerances == ToleranceConfig()
    assert config.sign is None
    assert config.strata.q is None
    assert config.system is None and config.parametrization is None
    assert config.output_format == "json"


def test_box_and_resolution():
    config = parse_problem_config({
        "rho": SPHERE, "dimension": 2, "region": {"box": [-0.5, 0.5], "resolution": [2, 3, 2, 3], "seed": 7},
    })
    assert config.region.bounds == ((-0.5, 0.5),) * 4
    assert config.region.resolution == (2, 3, 2, 3)
    assert config.region.seed == 7


def test_tolerance_block_fills_defaults():
    config = parse_problem_config({"rho": SPHERE, "dimension": 2, "tolerances": {"rank_tol": 1e-5}})
    assert config.tolerances.rank_tol == 1e-5
    assert config.tolerances.eig_zero_tol == 1e-7


def test_complex_numbers_accept_pairs():
    config = parse_problem_config({
        "rho": RANK_ONE, "dimension": 3, "strata": {"q": 2, "center": [0, [0.5, -1], 2.5], "radius": 0.1},
    })
    assert config.strata.center == (0j, 0.5 - 1j, 2.5 + 0j)
    assert config.strata.radius == 0.1


def test_blocks():
    config = parse_problem_config({
        "rho": RANK_ONE,
        "dimension": 3,
        "system": {"functions": ["Re(z1)", "Im(z1)", "Im(w)"], "k": 1},
        "parametrization": {"q": 1, "components": ["0", "u", "0"], "samples": [[0.5], [[0, 1]]]},
        "output": {"format": "csv"},
    })
    assert config.system.functions == ("Re(z1)", "Im(z1)", "Im(w)")
    assert config.system.k == 1 and config.system.q is None and not config.system.radical
    assert config.parametrization.samples == ((0.5 + 0j,), (1j,))
    assert config.parametrization.box == (-1.0, 1.0)
    assert config.output_format == "csv"


def test_overrides_decode_json_and_fall_back_to_strings():
    document = apply_overrides({"region": {"seed": 1}}, [
        "region.seed=3", "rho=Re(w) + abs2(z1)", "region.box=[-2, 2]", "tolerances.rank_tol=1e-5",
    ])
    assert document == {
        "region": {"seed": 3, "box": [-2, 2]},
        "rho": "Re(w) + abs2(z1)",
        "tolerances": {"rank_tol": 1e-5},
    }


@pytest.mark.parametrize("override", ["noequals", "=1", "region..seed=1", "rho.x=1"])
def test_invalid_overrides(override):
    with pytest.raises(ConfigurationError):
        apply_overrides({"rho": "Re(w)"}, [override])


def test_overrides_do_not_touch_the_input():
    document = {"rho": SPHERE, "dimension": 2}
    config = parse_problem_config(document, ["region.seed=9"])
    assert config.region.seed == 9
    assert "region" not in document


@pytest.mark.parametrize("document", [
    {"dimension": 2},
    {"rho": "", "dimension": 2},
    {"rho": SPHERE, "dimension": 1},
    {"rho": SPHERE, "dimension": 2, "sign": 2},
    {"rho": SPHERE, "dimension": 2, "variables": ["a"]},
    {"rho": SPHERE, "dimension": 2, "region": {"bounds": [[0, 1]] * 3}},
    {"rho": SPHERE, "dimension": 2, "region": {"box": [1, 0]}},
    {"rho": SPHERE, "dimension": 2, "region": {"box": [0, 1], "bounds": [[0, 1]] * 4}},
    {"rho": SPHERE, "dimension": 2, "region": {"resolution": 1}},
    {"rho": SPHERE, "dimension": 2, "region": {"resolution": [2, 2]}},
    {"rho": SPHERE, "dimension": 2, "region": {"jitter": 1.0}},
    {"rho": SPHERE, "dimension": 2, "tolerances": {"eig_zero_tol": 0}},
    {"rho": SPHERE, "dimension": 2, "strata": {"q": 0}},
    {"rho": SPHERE, "dimension": 2, "strata": {"center": [0]}},
    {"rho": SPHERE, "dimension": 2, "system": {"functions": []}},
    {"rho": SPHERE, "dimension": 2, "parametrization": {"q": 1, "components": ["u"]}},
    {"rho": SPHERE, "dimension": 2, "parametrization": {"q": 1, "components": ["u", "0"], "samples": [[1, 2, 3]]}},
    {"rho": SPHERE, "dimension": 2, "output": {"format": "xml"}},
])
def test_validation_errors(document):
    with pytest.raises(ConfigurationError):
        parse_problem_config(document)


def test_problem_must_be_an_object():
    with pytest.raises(ConfigurationError):
        parse_problem_config([SPHERE, 2])


def test_load_from_file(write_problem):
    path = write_problem({"rho": SPHERE, "dimension": 2})
    assert load_problem_config(path, ["region.resolution=2"]).region.resolution == (2,) * 4


def test_load_errors(tmp_path):
    with pytest.raises(ConfigurationError):
        load_problem_config(tmp_path / "missing.json")
    broken = tmp_path / "broken.json"
    broken.write_text("{\"rho\": ", encoding="utf-8")
    with pytest.raises(ConfigurationError):
        load_problem_config(broken)
    listed = tmp_path / "list.json"
    listed.write_text(json.dumps([1, 2]), encoding="utf-8")
    with pytest.raises(ConfigurationError):
        load_problem_config(listed)
