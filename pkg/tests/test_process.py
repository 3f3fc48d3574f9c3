import math
import unittest
from collections import deque

import numpy as np
import pytest

from masim.exceptions import ConfigurationError
from masim.sim.process import (
    InnovationDistribution,
    MaProcess,
    MaProcessState,
    next_xi,
    REFRESH_INTERVAL,
    SimulationConfig,
    spawn_stream,
    warm_up,
)


def _state(values, distribution=InnovationDistribution.UNIFORM):
    ring = deque(values, maxlen=len(values))
    return MaProcessState(
        ring=ring, window_sum=math.fsum(ring), distribution=distribution
    )


# ------------------------- CONFIG ----------------------------------


@pytest.mark.localtest
@pytest.mark.parametrize(
    "kwargs",
    [
        {"q": -1, "n": 10},
        {"q": 2, "n": 2},
        {"q": 2, "n": 10, "d_max": 1},
        {"q": 2, "n": 10, "streams": 0},
        {"q": 2, "n": 10, "seed": -1},
        {"q": 2, "n": 10, "seed": 2**64},
        {"q": 2, "n": 10, "distribution": "cauchy"},
    ],
)
def test_invalid_config(kwargs):
    with pytest.raises(ConfigurationError):
        SimulationConfig(**kwargs)


@pytest.mark.localtest
def test_config_normalises_distribution():
    config = SimulationConfig(q=3, n=10, distribution="Uniform", streams=3)
    assert config.distribution is InnovationDistribution.UNIFORM
    assert config.terms_per_stream == 4
    assert config.to_dict()["distribution"] == "uniform"


# ------------------------- WARM UP / NEXT XI ----------------------------------


@pytest.mark.localtest
def test_warm_up_ma0(scripted_rng):
    config = SimulationConfig(q=0, n=10, distribution="normal")
    state = warm_up(config, scripted_rng([0.7]))
    assert list(state.ring) == [0.7]
    assert state.xi == 0.7
    assert state.index == 1


@pytest.mark.localtest
def test_warm_up_sums_window(scripted_rng):
    config = SimulationConfig(q=2, n=10, distribution="uniform")
    state = warm_up(config, scripted_rng([0.1, 0.2, 0.3]))
    assert state.q == 2
    assert state.window_sum == pytest.approx(0.6)
    assert state.index == 1


@pytest.mark.localtest
def test_warm_up_is_deterministic():
    config = SimulationConfig(q=5, n=10, seed=99)
    first = warm_up(config, spawn_stream(config, 0))
    second = warm_up(config, spawn_stream(config, 0))
    assert list(first.ring) == list(second.ring)
    assert first.window_sum == second.window_sum


@pytest.mark.localtest
def test_next_xi_slides_window(scripted_rng):
    state = _state([0.1, 0.2, 0.3])
    xi = next_xi(state, scripted_rng([0.4]))
    assert xi == pytest.approx(0.9)
    assert list(state.ring) == [0.2, 0.3, 0.4]
    assert state.index == 2


@pytest.mark.localtest
def test_next_xi_ma0_is_identity(scripted_rng):
    state = _state([0.3], distribution=InnovationDistribution.NORMAL)
    assert next_xi(state, scripted_rng([-1.5])) == -1.5


@pytest.mark.localtest
def test_window_sum_refreshes_exactly(rng):
    config = SimulationConfig(q=3, n=10, distribution="uniform")
    state = warm_up(config, rng)
    for _ in range(REFRESH_INTERVAL):
        next_xi(state, rng)
    assert state.refresh_counter == 0
    assert state.window_sum == math.fsum(state.ring)


def test_incremental_sum_drift_is_bounded():
    """Incremental updates track a full recomputation of the window over 10^6 steps."""
    config = SimulationConfig(q=4, n=10, distribution="uniform", seed=5)
    rng = spawn_stream(config, 0)
    state = warm_up(config, rng)
    max_drift = 0.0
    for _ in range(1_000_000):
        xi = next_xi(state, rng)
        max_drift = max(max_drift, abs(xi - math.fsum(state.ring)))
    assert max_drift < 1e-9


# ------------------------- STREAMS ----------------------------------


@pytest.mark.localtest
def test_spawn_stream_is_deterministic():
    config = SimulationConfig(q=1, n=10, seed=42, streams=2)
    a = spawn_stream(config, 0).random(100)
    b = spawn_stream(config, 0).random(100)
    assert np.array_equal(a, b)


@pytest.mark.localtest
def test_spawn_stream_ids_differ():
    config = SimulationConfig(q=1, n=10, seed=42, streams=2)
    assert not np.array_equal(
        spawn_stream(config, 0).random(100), spawn_stream(config, 1).random(100)
    )


@pytest.mark.localtest
def test_spawn_stream_seed_sensitivity():
    a = spawn_stream(SimulationConfig(q=1, n=10, seed=42), 0).random(100)
    b = spawn_stream(SimulationConfig(q=1, n=10, seed=43), 0).random(100)
    assert not np.array_equal(a, b)


@pytest.mark.localtest
@pytest.mark.parametrize("stream_id", [-1, 2])
def test_spawn_stream_out_of_range(stream_id):
    config = SimulationConfig(q=1, n=10, streams=2)
    with pytest.raises(ConfigurationError):
        spawn_stream(config, stream_id)


# ------------------------- CHUNKED GENERATION ----------------------------------


@pytest.mark.localtest
@pytest.mark.parametrize("distribution", list(InnovationDistribution))
@pytest.mark.parametrize("q", [0, 1, 7])
def test_chunks_match_streaming(distribution, q):
    """The vectorised generator draws innovations in the same order as warm_up + next_xi."""
    config = SimulationConfig(q=q, n=5000, distribution=distribution, seed=3)
    chunked = MaProcess.for_stream(config, 0, chunk_size=777).generate(5000)

    rng = spawn_stream(config, 0)
    state = warm_up(config, rng)
    streamed = [state.xi] + [next_xi(state, rng) for _ in range(4999)]

    assert len(chunked) == 5000
    assert np.max(np.abs(chunked - np.array(streamed))) < 1e-9


@pytest.mark.localtest
def test_generation_is_reproducible():
    config = SimulationConfig(q=6, n=200_000, distribution="exponential", seed=8)
    first = MaProcess.for_stream(config, 0).generate(200_000)
    second = MaProcess.for_stream(config, 0).generate(200_000)
    assert np.array_equal(first, second)


@pytest.mark.localtest
def test_chunks_respect_requested_length():
    config = SimulationConfig(q=2, n=10)
    process = MaProcess.for_stream(config, 0, chunk_size=4)
    sizes = [len(chunk) for chunk in process.chunks(10)]
    assert sizes == [4, 4, 2]
    assert process.emitted == 10


@pytest.mark.localtest
@pytest.mark.parametrize("distribution", list(InnovationDistribution))
def test_ascent_probability_is_one_half(distribution):
    config = SimulationConfig(q=3, n=1_000_000, distribution=distribution, seed=21)
    xi = MaProcess.for_stream(config, 0).generate(config.n)
    ascents = np.count_nonzero(xi[1:] > xi[:-1])
    fraction = ascents / (len(xi) - 1)
    standard_error = 0.5 / math.sqrt(len(xi) - 1)
    assert abs(fraction - 0.5) < 3 * standard_error


if __name__ == "__main__":
    unittest.main()
