import logging
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from enum import Enum
from functools import reduce
from typing import Dict, List, Optional, Union

from masim.masim_config import configs
from masim.sim.analytic.model import mean_distance_estimate
from masim.sim.extrema.peak_detector import feed_chunk, PeakDetectorState
from masim.sim.process.config import SimulationConfig
from masim.sim.process.ma_process import MaProcess
from masim.sim.stats.histogram import DistanceHistogram
from masim.sim.utils.api import timed

logger = logging.getLogger(__name__)


class RunStatus(str, Enum):
    NOT_STARTED = "NOT_STARTED"
    RUNNING = "RUNNING"
    COMPLETED = "COMPLETED"
    ERROR = "ERROR"


class ParallelBackend(str, Enum):
    THREADS = "threads"
    RAY = "ray"


@dataclass
class StreamResult:
    stream_id: int
    histogram: DistanceHistogram
    terms: int
    peaks: int
    ascents: int
    comparisons: int

    @property
    def tie_events(self) -> int:
        return self.histogram.tie_events


def run_stream(config: SimulationConfig, stream_id: int) -> StreamResult:
    """Generate one stream's error terms chunk by chunk and histogram its peak distances."""
    process = MaProcess.for_stream(config, stream_id)
    detector = PeakDetectorState()
    histogram = DistanceHistogram(d_max=config.d_max)

    index = 1
    for chunk in process.chunks(config.terms_per_stream):
        histogram.accumulate_many(feed_chunk(detector, chunk, index))
        index += len(chunk)
    histogram.tie_events = detector.tie_events

    if detector.tie_events:
        logger.warning(
            f"Stream {stream_id}: {detector.tie_events} exact ties among error terms"
        )
    return StreamResult(
        stream_id=stream_id,
        histogram=histogram,
        terms=detector.terms,
        peaks=detector.peaks,
        ascents=detector.ascents,
        comparisons=detector.comparisons,
    )


@dataclass
class SimulationResult:
    config: SimulationConfig
    streams: List[StreamResult] = field(default_factory=list)

    @property
    def histogram(self) -> DistanceHistogram:
        return reduce(
            DistanceHistogram.merge,
            (s.histogram for s in self.streams),
            DistanceHistogram(d_max=self.config.d_max),
        )

    @property
    def terms(self) -> int:
        return sum(s.terms for s in self.streams)

    @property
    def peaks(self) -> int:
        return sum(s.peaks for s in self.streams)

    @property
    def peak_fraction(self) -> float:
        """Detected peaks over the number of interior terms, which tends to Pr[max] = 1/4."""
        interior = sum(max(s.terms - 2, 0) for s in self.streams)
        return self.peaks / interior if interior else 0.0

    @property
    def ascent_fraction(self) -> float:
        comparisons = sum(s.comparisons for s in self.streams)
        return sum(s.ascents for s in self.streams) / comparisons if comparisons else 0.0

    def metadata(self) -> Dict:
        """Config echo plus realized totals, in the shape of the report metadata block."""
        histogram = self.histogram
        per_stream = self.config.terms_per_stream
        return {
            **self.config.to_dict(),
            "tie_events": histogram.tie_events,
            "terms": self.terms,
            "peaks": self.peaks,
            "distances": histogram.total,
            "peak_fraction": self.peak_fraction,
            "ascent_fraction": self.ascent_fraction,
            "mean_distance_estimate": mean_distance_estimate(per_stream)
            if per_stream > 4
            else None,
        }


def _run_streams_ray(config: SimulationConfig, stream_ids: List[int]) -> List[StreamResult]:
    try:
        import ray
    except ImportError:
        raise ImportError(
            "`ray` is needed for the ray backend. You can install it with `pip install masim[ray]`."
        )

    ray.init(ignore_reinit_error=True)
    remote_stream = ray.remote(run_stream)
    return ray.get([remote_stream.remote(config, i) for i in stream_ids])


def _run_streams_threads(
    config: SimulationConfig, stream_ids: List[int], max_workers: Optional[int]
) -> List[StreamResult]:
    if len(stream_ids) == 1:
        return [run_stream(config, stream_ids[0])]
    with ThreadPoolExecutor(max_workers=max_workers) as pool:
        # map keeps stream-id order regardless of completion order
        return list(pool.map(lambda i: run_stream(config, i), stream_ids))


class SimulationRun:
    """Runs every stream of a config on the chosen backend and collects the results.

    Use as a context manager; the status moves to ``COMPLETED`` or ``ERROR`` on exit.
    """

    def __init__(
        self,
        config: SimulationConfig,
        backend: Optional[Union[str, ParallelBackend]] = None,
        max_workers: Optional[int] = None,
    ):
        self.config = config
        self.backend = ParallelBackend(backend or configs.get("parallel_backend"))
        self.max_workers = max_workers or configs.get("max_workers")
        self.status = RunStatus.NOT_STARTED
        self.error = None
        self._start = None

    def __enter__(self):
        self.status = RunStatus.RUNNING
        self._start = time.perf_counter()
        logger.info(
            f"Simulating MA({self.config.q}): {self.config.n} terms over "
            f"{self.config.streams} stream(s), backend={self.backend.value}"
        )
        return self

    def __exit__(self, exc_type, exc_value, exc_traceback):
        if exc_type:
            self.status = RunStatus.ERROR
            self.error = exc_value
        else:
            self.status = RunStatus.COMPLETED
        logger.info(
            f"Run {self.status.value} in {time.perf_counter() - self._start:.3f} seconds"
        )
        # return False to propagate any exception that occurred inside the with block
        return False

    def execute(self) -> SimulationResult:
        stream_ids = list(range(self.config.streams))
        if self.backend == ParallelBackend.RAY:
            streams = _run_streams_ray(self.config, stream_ids)
        else:
            streams = _run_streams_threads(self.config, stream_ids, self.max_workers)
        return SimulationResult(config=self.config, streams=streams)


@timed
def simulate(
    config: SimulationConfig,
    backend: Optional[Union[str, ParallelBackend]] = None,
    max_workers: Optional[int] = None,
) -> SimulationResult:
    """Runs every stream of ``config`` and collects the per-stream results.

    Args:
        config (SimulationConfig): MA order, number of terms, innovation law, seed, streams
            and ``d_max``.
        backend (Optional[str or ParallelBackend]): ``threads`` or ``ray``. Defaults to the
            ``parallel_backend`` config value (``threads`` unless changed).
        max_workers (Optional[int]): Thread pool size for the ``threads`` backend. Defaults to the
            ``max_workers`` config value.

    Returns:
        SimulationResult: Per-stream results, merged in stream-id order. The result is identical
        for a given config whatever the backend.

    Example:
        >>> import masim
        >>>
        >>> config = masim.SimulationConfig(q=16, n=10_000_000, streams=4, seed=7)
        >>> result = masim.simulate(config)
        >>> result.histogram.count(2) / result.histogram.total  # close to 0.25
        >>>
        >>> # run the streams as ray tasks
        >>> masim.simulate(config, backend="ray")
    """
    with SimulationRun(config, backend=backend, max_workers=max_workers) as run:
        return run.execute()
