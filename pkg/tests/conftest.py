import pytest
from hypothesis import HealthCheck, settings

from engelkit.config import get_settings

settings.register_profile(
    "engelkit",
    derandomize=True,
    max_examples=40,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow, HealthCheck.function_scoped_fixture],
)
settings.load_profile("engelkit")


@pytest.fixture(autouse=True)
def fresh_settings():
    """Drop cached settings so ENGELKIT_* overrides apply per test."""
    get_settings.cache_clear()
    yield
    get_settings.cache_clear()
