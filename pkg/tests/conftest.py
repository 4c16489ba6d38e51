"""Shared fixtures and hypothesis profiles."""

import os

import pytest
from hypothesis import HealthCheck, settings

from app.services.catalog import lookup, parse_group
from app.utils.cache_manager import engine_cache


settings.register_profile("default", max_examples=50, deadline=None)
settings.register_profile(
    "ci", max_examples=1000, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile(os.getenv("HYPOTHESIS_PROFILE", "default"))


def pytest_configure(config):
    config.addinivalue_line("markers", "slow: full-catalog sweeps; deselect with -m \"not slow\"")


@pytest.fixture
def fresh_cache():
    """Empty engine cache for tests that count hits and misses."""
    engine_cache.clear()
    yield engine_cache
    engine_cache.clear()


@pytest.fixture
def klass():
    """Look up a catalog class by group and label."""
    def _lookup(group: str, label: str):
        return lookup(parse_group(group), label)

    return _lookup
