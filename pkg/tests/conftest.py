import time

import numpy as np
import pytest

import masim
from masim.sim.defaults import Defaults
from masim.sim.process import SimulationConfig
from masim.sim.run import simulate

# https://docs.pytest.org/en/6.2.x/fixture.html#conftest-py-sharing-fixtures-across-multiple-files

REFERENCE_N = 10_000_000
REFERENCE_SEED = 7


@pytest.fixture(autouse=True)
def isolated_configs(tmp_path, monkeypatch):
    """Point the global defaults at an empty config file so a user's ~/.masim never leaks in."""
    monkeypatch.setattr(Defaults, "CONFIG_PATH", tmp_path / "masim" / "config.yaml")
    monkeypatch.delenv("MASIM_SEED", raising=False)
    masim.configs.defaults_cache = {}
    yield masim.configs
    masim.configs.defaults_cache = {}


class ScriptedRng:
    """Stands in for a numpy Generator and returns preset innovations in order."""

    def __init__(self, values):
        self._values = list(values)

    def _next(self, size=None):
        assert size is None
        return self._values.pop(0)

    random = standard_normal = standard_exponential = _next


@pytest.fixture
def scripted_rng():
    return ScriptedRng


@pytest.fixture
def rng():
    return np.random.default_rng(1234)


@pytest.fixture
def small_config():
    return SimulationConfig(q=4, n=20_000, seed=11, streams=1)


# ----------------- Reference simulations -----------------


def _reference_run(q, distribution="normal", n=REFERENCE_N, seed=REFERENCE_SEED):
    return simulate(
        SimulationConfig(q=q, n=n, distribution=distribution, seed=seed, streams=4),
        backend="threads",
        max_workers=4,
    )


@pytest.fixture(scope="session")
def ma16_timed_runs():
    """MA(16) with 10^7 terms under every innovation law, with wall-clock seconds per law."""
    runs, seconds = {}, {}
    for dist in masim.InnovationDistribution:
        start = time.perf_counter()
        runs[dist.value] = _reference_run(16, distribution=dist)
        seconds[dist.value] = time.perf_counter() - start
    return runs, seconds


@pytest.fixture(scope="session")
def ma16_runs(ma16_timed_runs):
    return ma16_timed_runs[0]


@pytest.fixture(scope="session")
def ma16_seconds(ma16_timed_runs):
    return ma16_timed_runs[1]


@pytest.fixture(scope="session")
def ma16_run(ma16_runs):
    return ma16_runs["normal"]


@pytest.fixture(scope="session")
def ma1_run():
    return _reference_run(1)


@pytest.fixture(scope="session")
def ma10_run():
    return _reference_run(10)


@pytest.fixture(scope="session")
def ma20_run():
    return _reference_run(20)
