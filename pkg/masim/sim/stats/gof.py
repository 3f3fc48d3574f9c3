import logging
import math
from dataclasses import dataclass
from typing import List, Tuple

from masim.exceptions import DomainError
from masim.sim.analytic.model import AnalyticModel
from masim.sim.stats.histogram import DistanceHistogram

logger = logging.getLogger(__name__)

MIN_GOF_SAMPLES = 10_000
MIN_EXPECTED_COUNT = 5.0
MIN_GOF_BINS = 3

_EPS = 1e-15
_FPMIN = 1e-300
_MAX_ITER = 10_000


def _log_prefactor(a: float, x: float) -> float:
    return -x + a * math.log(x) - math.lgamma(a)


def _lower_series(a: float, x: float) -> float:
    """Regularized lower incomplete gamma P(a, x) by its power series, used for x < a + 1."""
    term = total = 1.0 / a
    ap = a
    for _ in range(_MAX_ITER):
        ap += 1.0
        term *= x / ap
        total += term
        if abs(term) < abs(total) * _EPS:
            return total * math.exp(_log_prefactor(a, x))
    raise RuntimeError(f"Incomplete gamma series did not converge for a={a}, x={x}")


def _upper_continued_fraction(a: float, x: float) -> float:
    """Regularized upper incomplete gamma Q(a, x) by modified Lentz continued fraction, x >= a + 1."""
    b = x + 1.0 - a
    c = 1.0 / _FPMIN
    d = 1.0 / b
    h = d
    for i in range(1, _MAX_ITER + 1):
        an = -i * (i - a)
        b += 2.0
        d = an * d + b
        if abs(d) < _FPMIN:
            d = _FPMIN
        c = b + an / c
        if abs(c) < _FPMIN:
            c = _FPMIN
        d = 1.0 / d
        delta = d * c
        h *= delta
        if abs(delta - 1.0) < _EPS:
            return math.exp(_log_prefactor(a, x)) * h
    raise RuntimeError(
        f"Incomplete gamma continued fraction did not converge for a={a}, x={x}"
    )


def regularized_upper_gamma(a: float, x: float) -> float:
    """Q(a, x) = Gamma(a, x) / Gamma(a)."""
    if a <= 0:
        raise DomainError(f"Q(a, x) needs a > 0, got a={a}")
    if x < 0:
        raise DomainError(f"Q(a, x) needs x >= 0, got x={x}")
    if x == 0:
        return 1.0
    if x < a + 1.0:
        return max(0.0, 1.0 - _lower_series(a, x))
    return min(1.0, _upper_continued_fraction(a, x))


def chi2_sf(statistic: float, dof: int) -> float:
    """Survival function of the chi-square distribution with ``dof`` degrees of freedom."""
    if dof < 1:
        raise DomainError(f"dof must be >= 1, got {dof}")
    return regularized_upper_gamma(dof / 2.0, statistic / 2.0)


@dataclass(frozen=True)
class ChiSquareBin:
    d_low: int
    d_high: int
    observed: float
    expected: float


@dataclass(frozen=True)
class ChiSquareResult:
    statistic: float
    dof: int
    p_value: float
    bins: Tuple[ChiSquareBin, ...] = ()


def _merge_from_right(bins: List[ChiSquareBin]) -> List[ChiSquareBin]:
    bins = list(bins)
    while len(bins) > 1 and min(b.expected for b in bins) < MIN_EXPECTED_COUNT:
        last = bins.pop()
        prev = bins.pop()
        bins.append(
            ChiSquareBin(
                d_low=prev.d_low,
                d_high=last.d_high,
                observed=prev.observed + last.observed,
                expected=prev.expected + last.expected,
            )
        )
    return bins


def chi_square_gof(
    hist: DistanceHistogram, model: AnalyticModel, q: int
) -> ChiSquareResult:
    """Pearson goodness of fit of the observed distances against the asymptotic PMF.

    Only bins inside the asymptotic regime (d < q) take part; their analytic probabilities are
    renormalised to the observed in-regime total, and bins are merged from the right until every
    expected count is at least 5.
    """
    if hist.total < MIN_GOF_SAMPLES:
        raise DomainError(
            f"Chi-square needs at least {MIN_GOF_SAMPLES} distances, got {hist.total}"
        )
    ds = list(range(2, min(q - 1, hist.d_max, model.d_max) + 1))
    if len(ds) < MIN_GOF_BINS:
        raise DomainError(
            f"Chi-square needs at least {MIN_GOF_BINS} in-regime bins (d < q), q={q} leaves {len(ds)}"
        )

    observed_total = sum(hist.count(d) for d in ds)
    if observed_total == 0:
        raise DomainError("No observed distances fall inside the asymptotic regime")
    probs = [float(model.pmf(d)) for d in ds]
    norm = sum(probs)
    bins = _merge_from_right(
        [
            ChiSquareBin(d, d, float(hist.count(d)), observed_total * p / norm)
            for d, p in zip(ds, probs)
        ]
    )
    if len(bins) < MIN_GOF_BINS:
        raise DomainError(
            f"Only {len(bins)} bins remain after merging to expected counts >= {MIN_EXPECTED_COUNT}"
        )

    statistic = sum((b.observed - b.expected) ** 2 / b.expected for b in bins)
    dof = len(bins) - 1
    result = ChiSquareResult(
        statistic=statistic, dof=dof, p_value=chi2_sf(statistic, dof), bins=tuple(bins)
    )
    logger.debug(f"Chi-square {statistic:.3f} on {dof} dof, p={result.p_value:.4g}")
    return result
