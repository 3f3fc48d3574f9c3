import logging
import math
from dataclasses import dataclass
from typing import Dict

import numpy as np

from masim.exceptions import DomainError
from masim.sim.stats.histogram import DistanceHistogram

logger = logging.getLogger(__name__)

# Tail share above which moment estimates are flagged unreliable
MAX_TAIL_FRACTION = 1e-3


def tail_key(hist: DistanceHistogram) -> int:
    """Key under which :func:`empirical_pmf` reports the share of distances above ``d_max``."""
    return hist.d_max + 1


def empirical_pmf(hist: DistanceHistogram) -> Dict[int, float]:
    """Observed share of each distance among all recorded gaps, the empirical counterpart of
    ``Pr[d | peak]``. Bins 2..d_max are always present; the tail share sits under
    :func:`tail_key`."""
    if hist.total < 1:
        raise DomainError("Cannot estimate a PMF from an empty histogram")
    shares = {d: hist.count(d) / hist.total for d in range(2, hist.d_max + 1)}
    shares[tail_key(hist)] = hist.tail_count / hist.total
    return shares


@dataclass(frozen=True)
class MomentEstimates:
    mean: float
    mean_standard_error: float
    variance: float
    variance_standard_error: float
    in_range_count: int
    excluded_fraction: float

    @property
    def reliable(self) -> bool:
        return self.excluded_fraction < MAX_TAIL_FRACTION


def empirical_moments(hist: DistanceHistogram) -> MomentEstimates:
    """Sample mean and unbiased variance over the in-range bins, with normal-approximation
    standard errors ``s / sqrt(M)`` and ``s^2 * sqrt(2 / (M - 1))``.

    The tail bin is excluded; a large excluded share is reported through ``reliable`` rather
    than raised.
    """
    m = hist.in_range_count
    if m < 2:
        raise DomainError(
            f"Moments need at least 2 in-range distances, got {m} of {hist.total}"
        )
    ds = np.arange(2, hist.d_max + 1, dtype=np.float64)
    counts = np.array([hist.count(int(d)) for d in ds], dtype=np.float64)

    mean = float(np.dot(counts, ds) / m)
    variance = float(np.dot(counts, (ds - mean) ** 2) / (m - 1))
    estimates = MomentEstimates(
        mean=mean,
        mean_standard_error=math.sqrt(variance / m),
        variance=variance,
        variance_standard_error=variance * math.sqrt(2 / (m - 1)),
        in_range_count=m,
        excluded_fraction=hist.tail_fraction,
    )
    if not estimates.reliable:
        logger.warning(
            f"{hist.tail_fraction:.4%} of distances exceed d_max={hist.d_max}; "
            f"moment estimates are unreliable"
        )
    return estimates
