"""Shared fixtures: deterministic hypothesis profile, warmed numba kernels."""
import pytest
from hypothesis import HealthCheck, settings

from regcong import Config
from regcong._kernels import warm_up

# Deterministic property runs: no wall-clock deadline (JIT warm-up and CI
# jitter would otherwise flake), derandomized so failures reproduce exactly.
settings.register_profile(
    "regcong",
    deadline=None,
    derandomize=True,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("regcong")


@pytest.fixture(scope="session", autouse=True)
def _warm_kernels():
    # Compile the blocked solver once so per-test timing budgets measure the
    # algorithm, not JIT latency.
    warm_up()


@pytest.fixture()
def tmp_config(tmp_path):
    """Config with an isolated cache directory."""
    return Config(cache_dir=tmp_path / "cache")
