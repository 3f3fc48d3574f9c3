from .config import DEFAULT_D_MAX, SimulationConfig
from .distributions import InnovationDistribution
from .ma_process import (
    MaProcess,
    MaProcessState,
    next_xi,
    REFRESH_INTERVAL,
    spawn_stream,
    warm_up,
)
