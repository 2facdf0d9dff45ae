import sys
from pathlib import Path

import numpy as np
import pytest

from casimir_kk.core import make_log_grid
from casimir_kk.models import GOLD_DRUDE, GOLD_INTERBAND, synthetic_dataset

sys.path.insert(0, str(Path(__file__).parent))


@pytest.fixture(scope="session")
def drude_wide():
    """drude-gold tabulated over [1e-3, 1e4] eV, 50 points per decade."""
    return synthetic_dataset(GOLD_DRUDE, (), make_log_grid(1e-3, 1e4, 50), label="drude-gold")


@pytest.fixture(scope="session")
def drude_sample5():
    """drude-gold truncated to [0.042, 9] eV."""
    return synthetic_dataset(GOLD_DRUDE, (), make_log_grid(0.042, 9.0, 50), label="drude-gold-s5")


@pytest.fixture(scope="session")
def dl_wide():
    return synthetic_dataset(GOLD_DRUDE, GOLD_INTERBAND, make_log_grid(1e-3, 1e4, 50), label="dl-gold")


@pytest.fixture(scope="session")
def dl_handbook():
    """drude-lorentz-gold over [0.125, 1e4] eV (handbook-like coverage)."""
    return synthetic_dataset(GOLD_DRUDE, GOLD_INTERBAND, make_log_grid(0.125, 1e4, 50), label="dl-handbook")


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


_ACCEPTANCE = {}


@pytest.fixture
def criterion():
    """Record one PASS/FAIL line per acceptance criterion, then assert."""

    def report(number, ok, detail):
        line = f"criterion {number:2d}: {'PASS' if ok else 'FAIL'}  {detail}"
        _ACCEPTANCE[number] = line
        print(line)
        assert ok, line

    return report


def pytest_terminal_summary(terminalreporter):
    if _ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for n in sorted(_ACCEPTANCE):
            terminalreporter.write_line(_ACCEPTANCE[n])
