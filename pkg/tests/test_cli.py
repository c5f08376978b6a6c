import json
import logging
from logging.handlers import RotatingFileHandler
from pathlib import Path

import pytest
from click.testing import CliRunner

from src.cli import cli, exit_code_for
from src.config import load_problem_config
from src.errors import (
    AnalysisServiceError, ConfigurationError, EmptySampleError, EvaluationError, ExpressionSyntaxError,
    NoDataError, NonConvergenceError,
)
from tests.conftest import LEVI_FLAT, RANK_ONE, SPHERE

PROBLEMS = Path(__file__).resolve().parent.parent / "problems"

SPHERE_PROBLEM = {"rho": SPHERE, "dimension": 2, "region": {"box": [-1.2, 1.2], "resolution": 2, "seed": 1}}


@pytest.fixture(autouse=True)
def release_log_handlers():
    yield
    logging.captureWarnings(False)
    root = logging.getLogger()
    for handler in list(root.handlers):
        if type(handler) in (logging.StreamHandler, RotatingFileHandler):
            root.removeHandler(handler)
            handler.close()


@pytest.fixture
def invoke(tmp_path):
    runner = CliRunner()

    def _invoke(*args):
        return runner.invoke(cli, ["--log-dir", str(tmp_path / "logs"), *map(str, args)])
    return _invoke


def read_report(path: Path) -> dict:
    return json.loads(path.read_text(encoding="utf-8"))


def test_version(invoke):
    result = invoke("--version")
    assert result.exit_code == 0
    assert "levi-strata, version 0.1.0" in result.output


def test_analyze_sphere(invoke, write_problem, tmp_path):
    out = tmp_path / "sphere.json"
    result = invoke("analyze", write_problem(SPHERE_PROBLEM), "--out", out)
    assert result.exit_code == 0, result.output
    report = read_report(out)
    assert report["command"] == "analyze"
    assert report["convention"]["theta"] == "i/2(dbar-d)rho"
    assert report["convention"]["sign"] == 1
    assert report["hypersurface"] == {"rho": SPHERE, "N": 2}
    assert report["results"]
    for record in report["results"]:
        assert record["eigenvalues"][0] == pytest.approx(1.0, abs=1e-8)
        assert record["A"][0] == pytest.approx(1.0, abs=1e-8)
        assert record["nullity"] == 0
    summary = report["summary"]
    assert summary["verdict"] == "pseudoconvex(+)"
    assert summary["nullity_counts"] == {"0": summary["sample_count"], "1": 0}
    assert not summary["levi_flat"]


def test_repeated_runs_are_byte_identical(invoke, write_problem, tmp_path):
    problem = write_problem(SPHERE_PROBLEM)
    first, second = tmp_path / "a.json", tmp_path / "b.json"
    assert invoke("analyze", problem, "--out", first).exit_code == 0
    assert invoke("analyze", problem, "--out", second).exit_code == 0
    assert first.read_bytes() == second.read_bytes()


def test_overrides_change_the_sample(invoke, write_problem, tmp_path):
    problem = write_problem(SPHERE_PROBLEM)
    first, second = tmp_path / "a.json", tmp_path / "b.json"
    assert invoke("analyze", problem, "--out", first).exit_code == 0
    assert invoke("analyze", problem, "--set", "region.seed=2", "--out", second).exit_code == 0
    assert first.read_bytes() != second.read_bytes()


def test_csv_output(invoke, write_problem, tmp_path):
    out = tmp_path / "sphere.csv"
    result = invoke("analyze", write_problem(SPHERE_PROBLEM), "--format", "csv", "--out", out)
    assert result.exit_code == 0
    lines = out.read_text(encoding="utf-8").splitlines()
    assert lines[0] == "index,z1_re,z1_im,z2_re,z2_im,residual,d1,A0,nullity"
    assert len(lines) > 1


def test_levi_flat_analysis(invoke, write_problem, tmp_path):
    out = tmp_path / "flat.json"
    problem = write_problem({"rho": LEVI_FLAT, "dimension": 3, "region": {"box": [-0.5, 0.5], "resolution": 2}})
    assert invoke("analyze", problem, "--out", out).exit_code == 0
    summary = read_report(out)["summary"]
    assert summary["verdict"] == "undetermined"
    assert summary["levi_flat"]
    assert summary["nullity_counts"]["2"] == summary["sample_count"]


def test_strata_of_rank_one_model(invoke, write_problem, tmp_path):
    out = tmp_path / "strata.json"
    problem = write_problem({"rho": RANK_ONE, "dimension": 3, "region": {"box": [-0.1, 0.1], "resolution": 2}})
    result = invoke("strata", problem, "--q", 2, "--out", out)
    assert result.exit_code == 0, result.output
    report = read_report(out)
    assert report["summary"]["verdicts"] == {"2": "FAIL"}
    assert report["summary"]["dimensions"] == {"2": 1}
    for member in report["results"][0]["members"]:
        assert member["nullity"] == 2


def test_submanifold_levi_flat(invoke, tmp_path):
    out = tmp_path / "sub.json"
    result = invoke("submanifold", PROBLEMS / "levi_flat.json", "--out", out)
    assert result.exit_code == 0, result.output
    report = read_report(out)
    system, parametrization = report["results"]
    assert system["verdict"] == "complex-manifold(dim 2)"
    assert system["nondegenerate"]["value"]
    assert parametrization["verdict"] == "PASS"
    assert report["summary"]["verdicts"] == ["complex-manifold(dim 2)", "PASS"]


def test_submanifold_sphere_negative_control(invoke, tmp_path):
    out = tmp_path / "sub.json"
    result = invoke("submanifold", PROBLEMS / "sphere.json", "--set", "region.resolution=2", "--out", out)
    assert result.exit_code == 0, result.output
    system = read_report(out)["results"][0]
    assert system["verdict"] == "rank-too-high"
    assert system["rank"]["min_rank"] == 1


def test_report_goes_to_stdout_without_out(invoke, write_problem):
    result = invoke("analyze", write_problem(SPHERE_PROBLEM))
    assert result.exit_code == 0
    assert '"command": "analyze"' in result.output


@pytest.mark.parametrize("document, args", [
    ({"rho": "Re(w) + $", "dimension": 3}, ["analyze"]),
    ({"rho": "z1 + abs2(z2)", "dimension": 2}, ["analyze"]),
    ({"rho": RANK_ONE, "dimension": 3, "region": {"resolution": 2}}, ["strata", "--q", "3"]),
    ({"rho": RANK_ONE, "dimension": 3}, ["submanifold"]),
    ({"rho": SPHERE}, ["analyze"]),
    ({"rho": SPHERE, "dimension": 2, "region": {"resolution": 2}, "system": {"functions": ["z1"], "k": 0}},
     ["submanifold"]),
])
def test_configuration_errors_exit_with_2(invoke, write_problem, document, args):
    command, *extra = args
    result = invoke(command, write_problem(document), *extra)
    assert result.exit_code == 2
    assert "Error" in result.output


def test_malformed_override_exits_with_2(invoke, write_problem):
    assert invoke("analyze", write_problem(SPHERE_PROBLEM), "--set", "noequals").exit_code == 2


def test_missing_problem_file_exits_with_2(invoke, tmp_path):
    assert invoke("analyze", tmp_path / "missing.json").exit_code == 2


def test_empty_sample_exits_with_3(invoke, write_problem):
    problem = write_problem({"rho": "abs2(z1) + abs2(z2) + 1", "dimension": 2, "region": {"resolution": 2}})
    result = invoke("analyze", problem)
    assert result.exit_code == 3


def test_problem_files_are_valid():
    files = sorted(PROBLEMS.glob("*.json"))
    assert files
    for path in files:
        config = load_problem_config(path)
        assert config.dimension >= 2


@pytest.mark.parametrize("error, code", [
    (ConfigurationError("x"), 2),
    (ExpressionSyntaxError("x", 0), 2),
    (NoDataError("x"), 3),
    (EmptySampleError("x"), 3),
    (NonConvergenceError("x"), 4),
    (EvaluationError("x"), 4),
    (AnalysisServiceError("x"), 4),
    (RuntimeError("x"), 4),
])
def test_exit_code_mapping(error, code):
    assert exit_code_for(error) == code


@pytest.mark.parametrize("command", ["analyze", "strata", "submanifold"])
def test_every_command_records_the_scan_sign(invoke, write_problem, tmp_path, command):
    out = tmp_path / f"{command}.json"
    problem = write_problem({
        "rho": "1 - abs2(z1) - abs2(z2)", "dimension": 2,
        "region": {"box": [-1.2, 1.2], "resolution": 2, "seed": 1},
        "system": {"functions": ["Im(z2)"], "k": 0},
    })
    result = invoke(command, problem, "--out", out)
    assert result.exit_code == 0, result.output
    assert read_report(out)["convention"]["sign"] == -1


def test_configured_sign_wins_over_the_scan(invoke, write_problem, tmp_path):
    out = tmp_path / "strata.json"
    problem = write_problem(dict(SPHERE_PROBLEM, sign=-1))
    assert invoke("strata", problem, "--out", out).exit_code == 0
    assert read_report(out)["convention"]["sign"] == -1
