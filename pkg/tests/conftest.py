"""
Configuration for test environment

Shared constants and fixtures for the quantum exponent laboratory tests.
"""

import math
import os
from pathlib import Path

# Load environment variables from tests/.env
from dotenv import load_dotenv

test_env_path = Path(__file__).parent / '.env'
load_dotenv(test_env_path)

# Import pytest after loading environment
try:
    import pytest
except ImportError:
    # For environments where pytest is not installed
    pytest = None

# Reference system constants
CAT_MATRIX = ((1, 1), (1, 2))
GOLDEN_LOG_MU1 = math.log((3.0 + math.sqrt(5.0)) / 2.0)
ROTOR_TIME_STEP = math.sqrt(5.0) / 2.0
CAT_TIME_STEP = 1.0 / (2.0 * math.pi)

# Desk-scale grid sizes (override in tests/.env for heavier local runs)
SMALL_ROTOR_N = int(os.getenv("QCE_TEST_ROTOR_N", "256"))
SMALL_CAT_N = int(os.getenv("QCE_TEST_CAT_N", "64"))


@pytest.fixture(autouse=True)
def _isolate_env(monkeypatch):
    """Remove QCE_* guard overrides so tests are hermetic."""
    for key in list(os.environ.keys()):
        if key.startswith("QCE_") and not key.startswith("QCE_TEST_"):
            monkeypatch.delenv(key, raising=False)


@pytest.fixture
def rotor_spec():
    """Quadratic kicked rotor at q = 5, tau = sqrt(5)/2 on a small circle grid."""
    from quantum_exponents.floquet import FloquetSpec, KineticSpec, MultiplicativeKick
    from quantum_exponents.grid import PeriodicGrid

    grid = PeriodicGrid(1, SMALL_ROTOR_N)
    return FloquetSpec(grid, KineticSpec("rotor_quadratic", ROTOR_TIME_STEP), MultiplicativeKick(5.0))


@pytest.fixture
def cat_spec():
    """Configurational cat M = [[1,1],[1,2]] at T = 1/(2 pi) on a small torus grid."""
    from quantum_exponents.floquet import FloquetSpec, KineticSpec, SubstitutionKick
    from quantum_exponents.grid import PeriodicGrid

    grid = PeriodicGrid(2, SMALL_CAT_N)
    return FloquetSpec(grid, KineticSpec("cat_quadratic", CAT_TIME_STEP),
                       SubstitutionKick(CAT_MATRIX), order="kick_then_free")


@pytest.fixture
def identity_spec():
    """No kinetic term and a zero-strength kick: U is the identity."""
    from quantum_exponents.floquet import FloquetSpec, KineticSpec, MultiplicativeKick
    from quantum_exponents.grid import PeriodicGrid

    return FloquetSpec(PeriodicGrid(1, 64), KineticSpec("none"), MultiplicativeKick(0.0))


@pytest.fixture
def cat_matrix():
    from quantum_exponents.oracle import CatMatrix
    return CatMatrix(CAT_MATRIX)


@pytest.fixture
def zero_dynamics_config(tmp_path):
    """Raw custom config whose run completes with mean_growth exactly zero."""
    return {
        "preset": "custom",
        "grid_size": 64,
        "n_max": 6,
        "time_step": 1.0,
        "kinetic": "none",
        "kick_strength": 0.0,
        "observable": [1],
        "directions": [[1]],
        "output_dir": str(tmp_path / "zero"),
    }
