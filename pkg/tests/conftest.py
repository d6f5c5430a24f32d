# tests/conftest.py
"""Shared fixtures."""

import json
from pathlib import Path

import numpy as np
import pytest

from selberg.models import CompactSetContext, Disk, Rectangle, ZeroSet
from selberg.pipeline import HmEvaluator
from selberg.sources import resolve_lfunction, zeta

FIXTURES = Path(__file__).parent / "fixtures"
DATA = Path(__file__).parent.parent / "data"


def pytest_addoption(parser):
    parser.addoption(
        "--record-pilots",
        action="store_true",
        default=False,
        help="store the observed pilot values in fixtures/regression.json",
    )


@pytest.fixture(scope="session")
def zeta_L():
    return zeta()


@pytest.fixture(scope="session")
def dirichlet_L():
    """L(s, chi_{-4})."""
    return resolve_lfunction("dirichlet:-4")


@pytest.fixture(scope="session")
def evaluator():
    return HmEvaluator()


@pytest.fixture
def small_disk(zeta_L):
    return CompactSetContext.build(Disk(0.85 + 0j, 0.02), zeta_L.sigma_L)


@pytest.fixture
def small_rect(zeta_L):
    return CompactSetContext.build(Rectangle(0.8 - 0.1j, 0.9 + 0.1j), zeta_L.sigma_L)


@pytest.fixture(scope="session")
def zeta_zeros():
    from selberg.sources import load_zeros

    return load_zeros(str(DATA / "zeros" / "zeta.txt"))


@pytest.fixture
def synthetic_zeros():
    """A few zeros off the critical line among on-line ones."""
    return ZeroSet(
        betas=np.array([0.5, 0.9, 0.5, 0.95, 0.5]),
        gammas=np.array([1005.0, 1200.0, 1350.5, 1700.0, 1999.0]),
        source="synthetic",
    )


@pytest.fixture(scope="session")
def regression():
    with open(FIXTURES / "regression.json", "r", encoding="utf-8") as handle:
        return json.load(handle)


@pytest.fixture(scope="session")
def pilot_record(request, regression):
    """Observed pilot values by name; written back to the fixture under --record-pilots."""
    observed = {}
    yield observed
    if request.config.getoption("--record-pilots") and observed:
        for name, value in observed.items():
            regression["pilots"][name]["recorded"] = value
        with open(FIXTURES / "regression.json", "w", encoding="utf-8") as handle:
            json.dump(regression, handle, indent=2)
            handle.write("\n")


@pytest.fixture
def write_file(tmp_path):
    def _write(name: str, content: str) -> str:
        path = tmp_path / name
        path.write_text(content, encoding="utf-8")
        return str(path)

    return _write
