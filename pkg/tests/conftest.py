import pytest
from hypothesis import HealthCheck, settings

from binlog_pade.grid import GridSpec
from binlog_pade.pade_binlog import build_system

settings.register_profile(
    "default",
    max_examples=40,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.register_profile("thorough", max_examples=400, deadline=None)
settings.load_profile("default")


@pytest.fixture(scope="session")
def order_grid():
    """Every base configuration of the order/integrality grid, built once."""
    return [build_system(cfg) for cfg in GridSpec().configs()]


@pytest.fixture(scope="session")
def determinant_grid(order_grid):
    return [s for s in order_grid if s.config.n <= 3]
