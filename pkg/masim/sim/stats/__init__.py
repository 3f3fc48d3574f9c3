from .estimators import empirical_moments, empirical_pmf, MomentEstimates, tail_key
from .gof import chi2_sf, chi_square_gof, ChiSquareResult, regularized_upper_gamma
from .histogram import accumulate, DistanceHistogram, merge
from .report import (
    BinRow,
    compare,
    ComparisonReport,
    model_to_dict,
    ReportMetadata,
    ROW_COLUMNS,
)
