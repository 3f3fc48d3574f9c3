import logging
import math
from dataclasses import dataclass

import numpy as np

from masim.exceptions import DomainError
from masim.sim.analytic.model import pmf, prob_max
from masim.sim.process.distributions import InnovationDistribution
from masim.sim.utils.api import timed

logger = logging.getLogger(__name__)

MAX_ENUMERATION_D = 30
MIN_ORACLE_SAMPLES = 10_000
# 2^22 sign vectors per enumeration block
ENUMERATION_BLOCK = 1 << 22
ORACLE_BATCH = 100_000


def valley_pattern_count(d: int) -> int:
    """Brute-force count of interior up/down patterns between two peaks d apart with no interior peak.

    Each of the ``2^(d-2)`` sign vectors over the comparisons among ``xi_{i+1} .. xi_{i+d-1}`` is
    encoded as the bits of an integer (bit j set = step j goes up); a vector is rejected when some
    up step is immediately followed by a down step.
    """
    if not 2 <= d <= MAX_ENUMERATION_D:
        raise DomainError(
            f"Enumeration supports 2 <= d <= {MAX_ENUMERATION_D}, got d={d}"
        )
    steps = d - 2
    if steps < 2:
        # zero or one comparison can't hold an up-then-down
        return 2**steps

    ascent_then_descent = np.uint64((1 << (steps - 1)) - 1)
    count = 0
    for start in range(0, 1 << steps, ENUMERATION_BLOCK):
        stop = min(start + ENUMERATION_BLOCK, 1 << steps)
        vectors = np.arange(start, stop, dtype=np.uint64)
        bad = vectors & ~(vectors >> np.uint64(1)) & ascent_then_descent
        count += int(np.count_nonzero(bad == 0))
    return count


@dataclass(frozen=True)
class OracleEstimate:
    """Monte Carlo estimate of ``Pr[d]`` computed directly on raw innovation draws."""

    d: int
    q: int
    samples: int
    hits: int
    estimate: float
    standard_error: float
    analytic_pmf: float

    @property
    def in_asymptotic_regime(self) -> bool:
        return self.q > self.d

    @property
    def z_score(self) -> float:
        """Distance from the analytic PMF in standard errors taken at the analytic value, so it stays
        finite when no sample hits the pattern."""
        scale = 1 / float(prob_max())
        joint = self.analytic_pmf / scale
        null_error = scale * math.sqrt(joint * (1 - joint) / self.samples)
        if null_error == 0:
            return 0.0 if self.estimate == self.analytic_pmf else math.inf
        return (self.estimate - self.analytic_pmf) / null_error


def _count_gap_patterns(eps: np.ndarray, d: int, q: int) -> int:
    csum = np.concatenate((np.zeros((eps.shape[0], 1)), np.cumsum(eps, axis=1)), axis=1)
    # xi[:, k] is the error term at i-1+k, k = 0 .. d+2
    xi = csum[:, q + 1 :] - csum[:, : -(q + 1)]
    left, mid, right = xi[:, :-2], xi[:, 1:-1], xi[:, 2:]
    peaks = (left < mid) & (mid > right)
    # peaks[:, 0] is xi_i, peaks[:, d] is xi_{i+d}
    hit = peaks[:, 0] & peaks[:, d] & ~peaks[:, 1:d].any(axis=1)
    return int(np.count_nonzero(hit))


@timed
def pattern_probability_estimate(
    d: int,
    q: int,
    samples: int,
    seed: int,
    distribution=InnovationDistribution.NORMAL,
) -> OracleEstimate:
    """Estimates ``Pr[peak at i+d, none between | peak at i]`` by sampling the d+q+3 innovations
    behind ``xi_{i-1} .. xi_{i+d+1}`` and checking the full pattern.

    Nothing about the separation of the conditions is assumed, so for q <= d the estimate is the
    true (non-asymptotic) probability for this innovation law.

    Args:
        d (int): Distance between the two peaks, >= 2.
        q (int): MA order, >= 1.
        samples (int): Number of independent pattern draws, at least 10^4. They are processed
            in batches of 10^5.
        seed (int): Seed for the sampling generator.
        distribution (str or InnovationDistribution): Innovation law. (Default: ``normal``)

    Returns:
        OracleEstimate: The estimate with its binomial standard error, hit count and analytic
        reference value.

    Example:
        >>> import masim
        >>>
        >>> estimate = masim.pattern_probability_estimate(4, 8, samples=1_000_000, seed=2)
        >>> estimate.estimate, estimate.analytic_pmf  # both close to 0.1875
        >>> abs(estimate.z_score) < 3
    """
    if d < 2 or q < 1 or samples < MIN_ORACLE_SAMPLES:
        raise DomainError(
            f"Oracle needs d >= 2, q >= 1 and samples >= {MIN_ORACLE_SAMPLES}, "
            f"got d={d}, q={q}, samples={samples}"
        )
    if seed < 0:
        raise DomainError(f"seed must be >= 0, got {seed}")
    distribution = InnovationDistribution.from_name(distribution)
    rng = np.random.default_rng(np.random.SeedSequence(seed))
    width = d + q + 3

    hits, remaining = 0, samples
    while remaining > 0:
        batch = min(ORACLE_BATCH, remaining)
        eps = distribution.sample(rng, (batch, width))
        hits += _count_gap_patterns(eps, d, q)
        remaining -= batch

    joint = hits / samples
    scale = 1 / float(prob_max())
    estimate = OracleEstimate(
        d=d,
        q=q,
        samples=samples,
        hits=hits,
        estimate=scale * joint,
        standard_error=scale * math.sqrt(joint * (1 - joint) / samples),
        analytic_pmf=float(pmf(d)),
    )
    logger.debug(
        f"Oracle d={d} q={q}: {estimate.estimate:.6f} +/- {estimate.standard_error:.6f} "
        f"(analytic {estimate.analytic_pmf:.6f})"
    )
    return estimate


def pattern_probability_oracle(d: int, q: int, samples: int, seed: int) -> float:
    return pattern_probability_estimate(d, q, samples, seed).estimate
