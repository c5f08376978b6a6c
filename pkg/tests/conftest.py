"""Shared fixtures: the built-in example hypersurfaces and small seeding regions."""

import json

import numpy as np
import pytest

from src.geometry import Hypersurface
from src.models import Region

SPHERE = "abs2(z1) + abs2(z2) - 1"
LEVI_FLAT = "Re(w)"
WEIGHTED = "Re(w) + abs2(z1) + abs2(z2)^2"
RANK_ONE = "Re(w) + abs2(z1*z2)"
INDEFINITE = "Re(w) + abs2(z1) - abs2(z2)"

EXAMPLES = {
    "sphere": (SPHERE, 2),
    "levi_flat": (LEVI_FLAT, 3),
    "weighted": (WEIGHTED, 3),
    "rank_one": (RANK_ONE, 3),
    "indefinite": (INDEFINITE, 3),
}


@pytest.fixture
def sphere() -> Hypersurface:
    return Hypersurface.from_source(SPHERE, 2)


@pytest.fixture
def levi_flat() -> Hypersurface:
    return Hypersurface.from_source(LEVI_FLAT, 3)


@pytest.fixture
def weighted() -> Hypersurface:
    return Hypersurface.from_source(WEIGHTED, 3)


@pytest.fixture
def rank_one() -> Hypersurface:
    return Hypersurface.from_source(RANK_ONE, 3)


@pytest.fixture
def indefinite() -> Hypersurface:
    return Hypersurface.from_source(INDEFINITE, 3)


@pytest.fixture(params=sorted(EXAMPLES))
def example(request) -> Hypersurface:
    source, dimension = EXAMPLES[request.param]
    return Hypersurface.from_source(source, dimension)


@pytest.fixture
def sphere_region() -> Region:
    # 4^4 seeds around the unit sphere
    return Region.box(2, -1.2, 1.2, 4, seed=1)


@pytest.fixture
def small_region() -> Region:
    return Region.box(3, -0.1, 0.1, 2, seed=0)


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(12345)


@pytest.fixture
def write_problem(tmp_path):
    """Writes a problem document to a JSON file under tmp_path and returns its path."""
    def _write(document: dict, name: str = "problem.json"):
        path = tmp_path / name
        path.write_text(json.dumps(document), encoding="utf-8")
        return path
    return _write


def pytest_addoption(parser):
    parser.addoption(
        "--update-goldens", action="store_true", default=False,
        help="Rewrite tests/golden from the current build instead of comparing against it.",
    )


@pytest.fixture
def update_goldens(request) -> bool:
    return request.config.getoption("--update-goldens")
