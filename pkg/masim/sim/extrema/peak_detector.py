import logging
from dataclasses import dataclass
from typing import List, NamedTuple, Optional, Sequence

import numpy as np

from masim.exceptions import UsageError

logger = logging.getLogger(__name__)


class DistanceRecord(NamedTuple):
    """Index difference between two consecutive strict peaks; always >= 2."""

    d: int


def is_peak(left: float, mid: float, right: float) -> bool:
    """Strict local maximum test ``left < mid > right``; any equality is not a peak."""
    return left < mid and mid > right


@dataclass
class PeakDetectorState:
    """Rolling triple of error terms plus the bookkeeping needed to emit peak distances.

    Indices are 1-based. Besides the peak bookkeeping the state counts the diagnostics reported
    alongside a simulation. ``tie_events`` is the number of neighbouring pairs with exactly equal
    terms, each pair counted once; ``ascents`` counts the pairs that go up.
    """

    prev2: Optional[float] = None
    prev1: Optional[float] = None
    prev_index: int = 0
    last_peak_index: Optional[int] = None
    peaks: int = 0
    tie_events: int = 0
    ascents: int = 0
    comparisons: int = 0

    @property
    def terms(self) -> int:
        return self.prev_index


def feed(
    state: PeakDetectorState, xi: float, index: int
) -> Optional[DistanceRecord]:
    """Push ``xi`` (the term at ``index``) and emit a distance if ``prev1`` turned out to be a peak
    following an earlier one."""
    if index != state.prev_index + 1:
        raise UsageError(
            f"Indices must be fed consecutively: expected {state.prev_index + 1}, got {index}"
        )

    record = None
    if state.prev1 is not None:
        state.comparisons += 1
        if xi > state.prev1:
            state.ascents += 1
        elif xi == state.prev1:
            state.tie_events += 1

        if state.prev2 is not None:
            if is_peak(state.prev2, state.prev1, xi):
                peak_index = index - 1
                state.peaks += 1
                if state.last_peak_index is not None:
                    record = DistanceRecord(peak_index - state.last_peak_index)
                state.last_peak_index = peak_index

    state.prev2, state.prev1 = state.prev1, xi
    state.prev_index = index
    return record


def feed_chunk(
    state: PeakDetectorState, chunk: np.ndarray, start_index: int
) -> np.ndarray:
    """Vectorised :func:`feed` over a contiguous block of terms starting at ``start_index``.

    Leaves ``state`` exactly as feeding the block term by term would, and returns the emitted
    distances in order.
    """
    chunk = np.asarray(chunk, dtype=np.float64)
    if start_index != state.prev_index + 1:
        raise UsageError(
            f"Indices must be fed consecutively: expected {state.prev_index + 1}, got {start_index}"
        )
    if len(chunk) == 0:
        return np.empty(0, dtype=np.int64)

    carry = [v for v in (state.prev2, state.prev1) if v is not None]
    ext = np.concatenate((np.asarray(carry, dtype=np.float64), chunk))
    # global index of ext[0]
    base_index = start_index - len(carry)

    # pairs whose right element is new
    pairs = ext[max(len(carry) - 1, 0) :]
    state.comparisons += len(pairs) - 1
    state.ascents += int(np.count_nonzero(pairs[1:] > pairs[:-1]))
    state.tie_events += int(np.count_nonzero(pairs[1:] == pairs[:-1]))

    distances = np.empty(0, dtype=np.int64)
    if len(ext) >= 3:
        left, mid, right = ext[:-2], ext[1:-1], ext[2:]
        peak_mask = (left < mid) & (mid > right)
        peak_indices = np.flatnonzero(peak_mask) + 1 + base_index
        if len(peak_indices):
            state.peaks += len(peak_indices)
            if state.last_peak_index is not None:
                peak_indices = np.concatenate(([state.last_peak_index], peak_indices))
            distances = np.diff(peak_indices).astype(np.int64)
            state.last_peak_index = int(peak_indices[-1])

    tail = ext[-2:]
    state.prev2, state.prev1 = (
        (float(tail[0]), float(tail[1])) if len(tail) == 2 else (None, float(tail[0]))
    )
    state.prev_index = start_index + len(chunk) - 1
    return distances


def distances_of(series: Sequence[float]) -> List[int]:
    """All consecutive-peak distances of a finite series (empty for fewer than 3 terms)."""
    if len(series) < 3:
        return []
    return feed_chunk(PeakDetectorState(), np.asarray(series), 1).tolist()
