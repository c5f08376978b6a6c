"""
Full-report comparisons for the example problems under problems/.

Reports are compared byte for byte. After an intended change in the output, rewrite
them with `pytest tests/test_golden.py --update-goldens` and review the diff.
"""

import logging
from logging.handlers import RotatingFileHandler
from pathlib import Path

import pytest
from click.testing import CliRunner

from src.cli import cli

ROOT = Path(__file__).resolve().parent.parent
PROBLEMS = ROOT / "problems"
GOLDEN = Path(__file__).resolve().parent / "golden"

CASES = [
    *(("analyze", name, "json") for name in ("sphere", "levi_flat", "weighted", "rank_one", "indefinite")),
    ("analyze", "indefinite", "csv"),
    *(("strata", name, "json") for name in ("sphere", "levi_flat", "weighted", "rank_one", "indefinite")),
    *(("submanifold", name, "json") for name in ("sphere", "levi_flat", "weighted", "rank_one")),
]


@pytest.fixture(autouse=True)
def release_log_handlers():
    yield
    logging.captureWarnings(False)
    root = logging.getLogger()
    for handler in list(root.handlers):
        if type(handler) in (logging.StreamHandler, RotatingFileHandler):
            root.removeHandler(handler)
            handler.close()


@pytest.mark.parametrize("command, name, fmt", CASES, ids=[f"{c}-{n}-{f}" for c, n, f in CASES])
def test_report_matches_golden(command, name, fmt, tmp_path, update_goldens):
    out = tmp_path / f"report.{fmt}"
    result = CliRunner().invoke(cli, [
        "--log-dir", str(tmp_path / "logs"),
        command, str(PROBLEMS / f"{name}.json"), "--format", fmt, "--out", str(out),
    ])
    assert result.exit_code == 0, result.output

    golden = GOLDEN / f"{name}.{command}.{fmt}"
    if update_goldens:
        golden.parent.mkdir(parents=True, exist_ok=True)
        golden.write_bytes(out.read_bytes())
        return
    if not golden.exists():
        pytest.skip(f"{golden.name} not recorded; run with --update-goldens")
    assert out.read_bytes() == golden.read_bytes()
