import logging
from dataclasses import dataclass, field
from typing import Dict, Iterable

import numpy as np

from masim.exceptions import UsageError

logger = logging.getLogger(__name__)


@dataclass
class DistanceHistogram:
    """Counts of observed peak distances for d in [2, d_max], plus an overflow tail bin.

    Histograms with the same ``d_max`` merge field-wise, so streams can each keep a private
    histogram and combine them at the end in any order.
    """

    d_max: int = 64
    counts: Dict[int, int] = field(default_factory=dict)
    tail_count: int = 0
    total: int = 0
    tie_events: int = 0

    def __post_init__(self):
        if self.d_max < 2:
            raise UsageError(f"d_max must be >= 2, got {self.d_max}")

    @classmethod
    def from_distances(cls, distances: Iterable[int], d_max: int = 64):
        return cls(d_max=d_max).accumulate_many(distances)

    def accumulate(self, d: int) -> "DistanceHistogram":
        if d < 2:
            raise UsageError(f"Peak distances are >= 2, got d={d}")
        if d <= self.d_max:
            self.counts[d] = self.counts.get(d, 0) + 1
        else:
            self.tail_count += 1
        self.total += 1
        return self

    def accumulate_many(self, distances: Iterable[int]) -> "DistanceHistogram":
        """Vectorised :meth:`accumulate` for an array of distances."""
        if not isinstance(distances, np.ndarray):
            distances = np.fromiter(distances, dtype=np.int64)
        distances = distances.astype(np.int64, copy=False)
        if distances.size == 0:
            return self
        if distances.min() < 2:
            raise UsageError(f"Peak distances are >= 2, got d={int(distances.min())}")
        in_range = distances[distances <= self.d_max]
        binned = np.bincount(in_range, minlength=self.d_max + 1)
        for d in np.flatnonzero(binned):
            self.counts[int(d)] = self.counts.get(int(d), 0) + int(binned[d])
        self.tail_count += int(distances.size - in_range.size)
        self.total += int(distances.size)
        return self

    def merge(self, other: "DistanceHistogram") -> "DistanceHistogram":
        if self.d_max != other.d_max:
            raise UsageError(
                f"Cannot merge histograms with d_max {self.d_max} and {other.d_max}"
            )
        counts = dict(self.counts)
        for d, count in other.counts.items():
            counts[d] = counts.get(d, 0) + count
        return DistanceHistogram(
            d_max=self.d_max,
            counts=counts,
            tail_count=self.tail_count + other.tail_count,
            total=self.total + other.total,
            tie_events=self.tie_events + other.tie_events,
        )

    def count(self, d: int) -> int:
        return self.counts.get(d, 0)

    @property
    def in_range_count(self) -> int:
        return self.total - self.tail_count

    @property
    def tail_fraction(self) -> float:
        return self.tail_count / self.total if self.total else 0.0

    def __eq__(self, other):
        if not isinstance(other, DistanceHistogram):
            return NotImplemented
        return (
            self.d_max == other.d_max
            and {d: c for d, c in self.counts.items() if c}
            == {d: c for d, c in other.counts.items() if c}
            and self.tail_count == other.tail_count
            and self.total == other.total
            and self.tie_events == other.tie_events
        )

    def to_dict(self) -> Dict:
        return {
            "d_max": self.d_max,
            "counts": {str(d): self.count(d) for d in range(2, self.d_max + 1)},
            "tail_count": self.tail_count,
            "total": self.total,
            "tie_events": self.tie_events,
        }


def accumulate(hist: DistanceHistogram, d: int) -> DistanceHistogram:
    return hist.accumulate(d)


def merge(a: DistanceHistogram, b: DistanceHistogram) -> DistanceHistogram:
    return a.merge(b)
