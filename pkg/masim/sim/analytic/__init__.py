from .model import (
    AnalyticModel,
    cdf,
    expected_peak_count,
    mean,
    mean_distance_estimate,
    pi_no_interior_max,
    pmf,
    prob_max,
    series_mean,
    series_variance,
    tail_mass,
    variance,
)
from .oracle import (
    MAX_ENUMERATION_D,
    OracleEstimate,
    pattern_probability_estimate,
    pattern_probability_oracle,
    valley_pattern_count,
)
from .separation import (
    conditions_separable,
    InnovationCondition,
    pattern_conditions,
    peak_gap_patterns,
    separated_probability,
    step_innovations,
)
