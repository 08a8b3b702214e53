import pytest
from pathlib import Path

#  sys.path tweak
import sys
sys.path.insert(0, str(Path(__file__).parent.parent))


from src.grid.fields import GridSpec
from src.harness.config import build_config
from src.model.profiles import constant_profile
from src.model.types import BoundaryData, DimensionlessParams
from src.solvers.state import TimeStepConfig


@pytest.fixture
def params():
    """Reference geometry: L=5, H=1, mu_e=1e-2."""
    return DimensionlessParams(gamma=0.2, beta1=4e-4, beta2=1e-2, viscosity_ratio_M=2.0, end_time_T=0.02)


@pytest.fixture
def hyperbolic_params():
    return DimensionlessParams(gamma=1.0, beta1=0.0, beta2=0.0, viscosity_ratio_M=2.0, end_time_T=0.02)


@pytest.fixture
def small_grid():
    return GridSpec(12, 6)


@pytest.fixture
def bc():
    return BoundaryData()


@pytest.fixture
def flat_bc():
    """z-independent inflow of 0.9."""
    return BoundaryData(inflow_saturation_profile=constant_profile(0.9))


@pytest.fixture
def cfg():
    return TimeStepConfig(dt_max=5e-3)


TEST_SEED = 20251016


@pytest.fixture
def rng():
    return build_config({"run": {"seed": TEST_SEED}}).rng()
