import logging
import math
from collections import deque
from dataclasses import dataclass, field
from typing import Deque, Iterator, Optional

import numpy as np

from masim.exceptions import ConfigurationError
from masim.sim.process.config import SimulationConfig
from masim.sim.process.distributions import InnovationDistribution

logger = logging.getLogger(__name__)

# Steps between exact recomputations of the running window sum
REFRESH_INTERVAL = 65536


@dataclass
class MaProcessState:
    """Sliding window over the last q+1 innovations of an MA(q) process with unit coefficients.

    ``window_sum`` is the current error term xi_index. It is maintained incrementally and
    recomputed exactly from ``ring`` every :data:`REFRESH_INTERVAL` steps.
    """

    ring: Deque[float]
    window_sum: float
    distribution: InnovationDistribution
    index: int = 1
    refresh_counter: int = 0

    @property
    def q(self) -> int:
        return self.ring.maxlen - 1

    @property
    def xi(self) -> float:
        return self.window_sum

    def refresh(self):
        self.window_sum = math.fsum(self.ring)
        self.refresh_counter = 0


def spawn_stream(config: SimulationConfig, stream_id: int) -> np.random.Generator:
    """Generator for one stream, a pure function of ``(config.seed, stream_id)``.

    The entropy pool is ``SeedSequence([seed, stream_id])``, so streams with different ids (or
    different seeds) are statistically independent PCG64 streams while the same pair always
    reproduces the same draws.
    """
    if not 0 <= stream_id < config.streams:
        raise ConfigurationError(
            f"stream_id must be in [0, {config.streams}), got {stream_id}"
        )
    seed_seq = np.random.SeedSequence([config.seed, stream_id])
    return np.random.default_rng(seed_seq)


def warm_up(config: SimulationConfig, rng: np.random.Generator) -> MaProcessState:
    """Draw the q+1 innovations behind xi_1 and return the state positioned at index 1."""
    window = config.q + 1
    ring = deque(
        (config.distribution.sample(rng) for _ in range(window)), maxlen=window
    )
    return MaProcessState(
        ring=ring,
        window_sum=math.fsum(ring),
        distribution=config.distribution,
    )


def next_xi(state: MaProcessState, rng: np.random.Generator) -> float:
    """Slide the window by one innovation and return the new error term."""
    eps = state.distribution.sample(rng)
    evicted = state.ring[0]
    # deque with maxlen drops ring[0] on append
    state.ring.append(eps)
    state.window_sum += eps - evicted
    state.index += 1
    state.refresh_counter += 1
    if state.refresh_counter >= REFRESH_INTERVAL:
        state.refresh()
    return state.window_sum


@dataclass
class MaProcess:
    """Chunked generator of MA(q) error terms for one stream.

    Draws innovations in the same order as :func:`warm_up` followed by repeated :func:`next_xi`
    calls, but computes each chunk of at most :data:`REFRESH_INTERVAL` window sums from a fresh
    cumulative sum, which is the vectorised form of "incremental update with exact recomputation
    every R steps".
    """

    config: SimulationConfig
    rng: np.random.Generator
    chunk_size: int = REFRESH_INTERVAL
    _tail: Optional[np.ndarray] = field(default=None, init=False, repr=False)
    emitted: int = field(default=0, init=False)

    @classmethod
    def for_stream(cls, config: SimulationConfig, stream_id: int, **kwargs):
        return cls(config=config, rng=spawn_stream(config, stream_id), **kwargs)

    def _next_chunk(self, size: int) -> np.ndarray:
        q = self.config.q
        if self._tail is None:
            # First q innovations of the warm-up window; the (q+1)-th opens the first chunk
            self._tail = np.asarray(
                self.config.distribution.sample(self.rng, q), dtype=np.float64
            )
        fresh = self.config.distribution.sample(self.rng, size)
        buf = np.concatenate((self._tail, fresh))
        csum = np.concatenate(([0.0], np.cumsum(buf)))
        xi = csum[q + 1 :] - csum[: -(q + 1)]
        self._tail = buf[len(buf) - q :]
        self.emitted += size
        return xi

    def chunks(self, n: int) -> Iterator[np.ndarray]:
        """Yield the next ``n`` error terms in chunks of at most ``chunk_size``."""
        remaining = n
        while remaining > 0:
            size = min(self.chunk_size, remaining)
            yield self._next_chunk(size)
            remaining -= size

    def generate(self, n: int) -> np.ndarray:
        return np.concatenate(list(self.chunks(n))) if n else np.empty(0)
