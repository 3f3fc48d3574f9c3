import json
import logging
from typing import Dict, List, Optional, Union

import pandas as pd
from pydantic import BaseModel

from masim.exceptions import DomainError
from masim.sim.analytic.model import AnalyticModel
from masim.sim.stats.estimators import empirical_moments, empirical_pmf, tail_key
from masim.sim.stats.gof import chi_square_gof
from masim.sim.stats.histogram import DistanceHistogram

logger = logging.getLogger(__name__)

ROW_COLUMNS = [
    "d",
    "count",
    "empirical_pmf",
    "analytic_pmf",
    "abs_error",
    "in_asymptotic_regime",
]


def model_to_dict(model: BaseModel) -> Dict:
    # pydantic 2 renamed .dict() to .model_dump()
    if hasattr(model, "model_dump"):
        return model.model_dump()
    return model.dict()


class ReportMetadata(BaseModel):
    q: int
    n: int
    distribution: str
    seed: int
    streams: int
    d_max: int = 64
    tie_events: int = 0
    terms: Optional[int] = None
    peaks: Optional[int] = None
    distances: Optional[int] = None
    peak_fraction: Optional[float] = None
    ascent_fraction: Optional[float] = None
    mean_distance_estimate: Optional[float] = None


class BinRow(BaseModel):
    d: int
    count: int
    empirical_pmf: float
    analytic_pmf: float
    abs_error: float
    in_asymptotic_regime: bool


class MomentEstimate(BaseModel):
    value: float
    standard_error: float


class MomentsReport(BaseModel):
    mean: MomentEstimate
    variance: MomentEstimate
    in_range_count: int
    excluded_fraction: float
    reliable: bool


class ChiSquareReport(BaseModel):
    statistic: float
    dof: int
    p_value: float


class ComparisonReport(BaseModel):
    """Empirical versus analytic distance distribution for one simulation."""

    metadata: ReportMetadata
    rows: List[BinRow]
    tail_fraction: float
    moments: MomentsReport
    chi_square: Optional[ChiSquareReport] = None
    chi_square_note: Optional[str] = None

    def to_dict(self) -> Dict:
        return model_to_dict(self)

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2) + "\n"

    def rows_frame(self) -> pd.DataFrame:
        return pd.DataFrame([model_to_dict(row) for row in self.rows], columns=ROW_COLUMNS)

    def in_regime_rows(self) -> List[BinRow]:
        return [row for row in self.rows if row.in_asymptotic_regime]

    def max_in_regime_error(self) -> Optional[float]:
        errors = [row.abs_error for row in self.in_regime_rows()]
        return max(errors) if errors else None


def compare(
    hist: DistanceHistogram,
    model: AnalyticModel,
    meta: Union[ReportMetadata, Dict],
) -> ComparisonReport:
    """Compares the observed distances in ``hist`` with the asymptotic distance PMF of ``model``.

    A bin is inside the asymptotic regime when d < q. When the chi-square test has too few
    in-regime bins or samples (always the case for small q), the report carries no chi-square and
    records why in ``chi_square_note``.

    Args:
        hist (DistanceHistogram): Merged distances of a simulation.
        model (AnalyticModel): Closed-form PMF to compare against.
        meta (ReportMetadata or Dict): Run metadata, e.g. ``SimulationResult.metadata()``. Its
            ``q`` decides which bins are in the asymptotic regime. ``tie_events`` and ``d_max``
            are taken from ``hist``.

    Returns:
        ComparisonReport: Per-bin rows, tail fraction, moments and the optional chi-square fit.

    Raises:
        DomainError: If ``hist`` has fewer than 2 distances in range.

    Example:
        >>> import masim
        >>>
        >>> result = masim.simulate(masim.SimulationConfig(q=16, n=10_000_000, streams=4))
        >>> report = masim.compare(result.histogram, masim.AnalyticModel(), result.metadata())
        >>> report.max_in_regime_error(), report.moments.mean.value
        >>> print(report.to_json())
    """
    fields = model_to_dict(meta) if isinstance(meta, ReportMetadata) else dict(meta)
    fields.update(tie_events=hist.tie_events, d_max=hist.d_max)
    meta = ReportMetadata(**fields)

    shares = empirical_pmf(hist)
    rows = []
    for d in range(2, hist.d_max + 1):
        analytic = float(model.pmf(d))
        rows.append(
            BinRow(
                d=d,
                count=hist.count(d),
                empirical_pmf=shares[d],
                analytic_pmf=analytic,
                abs_error=abs(shares[d] - analytic),
                in_asymptotic_regime=model.in_asymptotic_regime(d, meta.q),
            )
        )

    moments = empirical_moments(hist)
    chi_square, note = None, None
    try:
        result = chi_square_gof(hist, model, q=meta.q)
        chi_square = ChiSquareReport(
            statistic=result.statistic, dof=result.dof, p_value=result.p_value
        )
    except DomainError as e:
        note = str(e)
        logger.info(f"Chi-square skipped: {note}")

    return ComparisonReport(
        metadata=meta,
        rows=rows,
        tail_fraction=shares[tail_key(hist)],
        moments=MomentsReport(
            mean=MomentEstimate(
                value=moments.mean, standard_error=moments.mean_standard_error
            ),
            variance=MomentEstimate(
                value=moments.variance, standard_error=moments.variance_standard_error
            ),
            in_range_count=moments.in_range_count,
            excluded_fraction=moments.excluded_fraction,
            reliable=moments.reliable,
        ),
        chi_square=chi_square,
        chi_square_note=note,
    )
