import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional

from masim.exceptions import DomainError

logger = logging.getLogger(__name__)

# Moment series are cut where the summand d^k * pmf(d) drops below this
SERIES_CUTOFF = 1e-15
MOMENT_TOLERANCE = 1e-12


def prob_max() -> Fraction:
    """Probability that an error term of an MA(q), q > 0, process is a strict local maximum."""
    return Fraction(1, 4)


def expected_peak_count(n: int) -> Fraction:
    if n < 0:
        raise DomainError(f"n must be >= 0, got {n}")
    return n * prob_max()


def mean_distance_estimate(n: int) -> float:
    """Finite-N estimate ``N / (N * Pr[max] - 1)`` of the mean peak distance; tends to 4."""
    if n <= 4:
        raise DomainError(
            f"The mean distance estimate needs more than one expected peak (n >= 5), got n={n}"
        )
    return n / (n / 4 - 1)


def _check_distance(d: int):
    if d < 2:
        raise DomainError(f"Distances between strict peaks are >= 2, got d={d}")


def pi_no_interior_max(d: int) -> Fraction:
    """Probability that no term strictly between two peaks d apart is itself a peak: (d-1)/2^(d-2)."""
    _check_distance(d)
    return Fraction(d - 1, 2 ** (d - 2))


def pmf(d: int) -> Fraction:
    """Asymptotic distance PMF ``(d-1)/2^d``, exact when q > d.

    Equals ``pi_no_interior_max(d) * prob_max()``: the joint probability of the peak/valley/peak
    pattern is ``pi(d) / 2^4``, conditioned on the first peak.
    """
    _check_distance(d)
    return Fraction(d - 1, 2**d)


def cdf(d: int) -> Fraction:
    """``sum_{k=2}^{d} pmf(k)``, taken as the complement of the closed-form tail."""
    if d < 2:
        return Fraction(0)
    return 1 - tail_mass(d)


def tail_mass(d: int) -> Fraction:
    """Closed-form ``sum_{k > d} pmf(k) = (d+1)/2^d`` for d >= 1."""
    if d < 1:
        raise DomainError(f"tail_mass needs d >= 1, got d={d}")
    return Fraction(d + 1, 2**d)


def _raw_moment(power: int) -> Fraction:
    total, d = Fraction(0), 2
    while True:
        term = d**power * pmf(d)
        if float(term) < SERIES_CUTOFF:
            return total
        total += term
        d += 1


def series_mean() -> float:
    return float(_raw_moment(1))


def series_variance() -> float:
    return float(_raw_moment(2) - _raw_moment(1) ** 2)


def _checked_moment(value: float, expected: Fraction, label: str) -> Fraction:
    if abs(value - float(expected)) > MOMENT_TOLERANCE:
        raise RuntimeError(
            f"Series {label} {value!r} disagrees with the closed form {expected}"
        )
    return expected


def mean() -> Fraction:
    return _checked_moment(series_mean(), Fraction(4), "mean")


def variance() -> Fraction:
    return _checked_moment(series_variance(), Fraction(4), "variance")


@dataclass(frozen=True)
class AnalyticModel:
    """Closed-form distance distribution tabulated up to ``d_max``.

    The PMF is asymptotic: it is exact only for q > d, so callers flag bins with d >= q.
    """

    d_max: int = 64

    def __post_init__(self):
        if self.d_max < 2:
            raise DomainError(f"d_max must be >= 2, got {self.d_max}")

    prob_max = staticmethod(prob_max)
    expected_peak_count = staticmethod(expected_peak_count)
    mean_distance_estimate = staticmethod(mean_distance_estimate)
    pi_no_interior_max = staticmethod(pi_no_interior_max)
    pmf = staticmethod(pmf)
    cdf = staticmethod(cdf)
    tail_mass = staticmethod(tail_mass)
    mean = staticmethod(mean)
    variance = staticmethod(variance)

    @property
    def distances(self) -> range:
        return range(2, self.d_max + 1)

    def pmf_table(self) -> List[Fraction]:
        return [pmf(d) for d in self.distances]

    def tail(self) -> Fraction:
        return tail_mass(self.d_max)

    @staticmethod
    def in_asymptotic_regime(d: int, q: Optional[int]) -> bool:
        return q is not None and d < q
