# Note these are global variables that are instantiated within masim_config.py:
from .masim_config import configs
from .sim.analytic import (
    AnalyticModel,
    cdf,
    mean,
    mean_distance_estimate,
    pattern_probability_estimate,
    pattern_probability_oracle,
    pi_no_interior_max,
    pmf,
    prob_max,
    valley_pattern_count,
    variance,
)
from .sim.extrema import distances_of, feed, is_peak, PeakDetectorState
from .sim.process import (
    InnovationDistribution,
    MaProcess,
    next_xi,
    SimulationConfig,
    spawn_stream,
    warm_up,
)
from .sim.run import simulate, SimulationResult, SimulationRun
from .sim.stats import compare, ComparisonReport, DistanceHistogram

__version__ = "0.1.0"
