import json
import logging

import numpy as np
import pytest

from src.errors import UnsupportedFormatError
from src.models import PseudoconvexityVerdict, Report, ToleranceConfig
from src.storage import ReportWriter, format_float, render_csv, render_json

EXPECTED_JSON = """{
  "version": "0.1.0",
  "command": "analyze",
  "convention": {
    "sign": 1
  },
  "hypersurface": {
    "rho": "Re(w)",
    "N": 3
  },
  "results": [
    {
      "point": [
        [0.5, 0.0]
      ],
      "nullity": 2
    }
  ],
  "summary": {
    "verdict": "undetermined"
  }
}
"""


@pytest.fixture
def report() -> Report:
    return Report(
        version="0.1.0",
        command="analyze",
        convention={"sign": 1},
        hypersurface={"rho": "Re(w)", "N": 3},
        results=[{"point": [[0.5, -0.0]], "nullity": 2}],
        summary={"verdict": "undetermined"},
        records=[{"index": 0, "z1_re": 0.5, "d1": 1.0}, {"index": 1, "z1_re": -0.0, "extra": None}],
    )


@pytest.mark.parametrize("value, text", [
    (0.1, "0.10000000000000001"),
    (1 / 3, "0.33333333333333331"),
    (1.0, "1.0"),
    (-0.0, "0.0"),
    (float("nan"), "null"),
    (float("inf"), "null"),
    (1e-20, "9.9999999999999995e-21"),
])
def test_format_float(value, text):
    assert format_float(value) == text


def test_json_layout(report):
    assert render_json(report) == EXPECTED_JSON


def test_json_key_order_is_fixed(report):
    report.summary = {"verdict": PseudoconvexityVerdict.UNDETERMINED, "eigenvalues": np.array([1.0, 0.0])}
    report.results = [{"point": np.array([1 + 2j])}]
    document = json.loads(render_json(report))
    assert list(document) == ["version", "command", "convention", "hypersurface", "results", "summary"]
    assert document["summary"] == {"verdict": "undetermined", "eigenvalues": [1.0, 0.0]}
    assert document["results"] == [{"point": [[1.0, 2.0]]}]


def test_csv_columns_in_first_seen_order(report):
    assert render_csv(report) == "index,z1_re,d1,extra\n0,0.5,1.0,\n1,0.0,,\n"


def test_save_creates_directories(report, tmp_path):
    writer = ReportWriter(logger=logging.getLogger(__name__))
    path = writer.save(report, tmp_path / "nested" / "report.json")
    assert path.read_text(encoding="utf-8") == EXPECTED_JSON
    csv_path = writer.save(report, tmp_path / "report.csv", "csv")
    assert csv_path.read_text(encoding="utf-8").startswith("index,")


def test_unknown_format(report):
    writer = ReportWriter(logger=logging.getLogger(__name__))
    with pytest.raises(UnsupportedFormatError):
        writer.render(report, "xml")


def test_convention_and_hypersurface_blocks_are_dumped_in_schema_order(report):
    tolerances = ToleranceConfig(stratum_tol=1e-5).as_dict()
    report.convention = {"tolerances": dict(reversed(list(tolerances.items()))), "sign": np.int64(-1), "theta": "t"}
    report.hypersurface = {"N": 3, "rho": "Re(w)"}
    document = json.loads(render_json(report))
    assert list(document["convention"]) == ["theta", "sign", "tolerances"]
    assert document["convention"]["sign"] == -1
    assert list(document["convention"]["tolerances"]) == list(tolerances)
    assert document["convention"]["tolerances"]["stratum_tol"] == 1e-5
    assert list(document["hypersurface"]) == ["rho", "N"]
