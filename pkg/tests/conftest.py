import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).resolve().parent))

from afo import load_afo

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"


@pytest.fixture(scope="session")
def fixtures_dir() -> Path:
    return FIXTURES


@pytest.fixture(scope="session")
def boardroom():
    """fix1: three-cycle of focus proposals over the importance lattice."""
    model, _, _ = load_afo(str(FIXTURES / "fix1.afo"))
    return model


@pytest.fixture(scope="session")
def marathon():
    """fix3: training-philosophy cycle with the mutually attacking tail."""
    model, _, _ = load_afo(str(FIXTURES / "fix3.afo"))
    return model
