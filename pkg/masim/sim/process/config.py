from dataclasses import asdict, dataclass
from typing import Dict, Union

from masim.exceptions import ConfigurationError
from masim.sim.process.distributions import InnovationDistribution
from masim.sim.utils.api import ceil_div

DEFAULT_D_MAX = 64
MAX_SEED = 2**64 - 1


@dataclass(frozen=True)
class SimulationConfig:
    """Parameters of one simulation: MA order, number of error terms, innovation law and seeding.

    ``n`` is the total number of error terms across all streams; each stream generates
    ``ceil(n / streams)`` terms.
    """

    q: int
    n: int
    distribution: Union[InnovationDistribution, str] = InnovationDistribution.NORMAL
    seed: int = 0
    streams: int = 1
    d_max: int = DEFAULT_D_MAX

    def __post_init__(self):
        # frozen dataclass, so normalise through object.__setattr__
        try:
            object.__setattr__(
                self, "distribution", InnovationDistribution.from_name(self.distribution)
            )
        except ValueError as e:
            raise ConfigurationError(str(e))

        if self.q < 0:
            raise ConfigurationError(f"q must be >= 0, got {self.q}")
        if self.n < 3:
            raise ConfigurationError(
                f"n must be >= 3 (fewer terms cannot contain a peak), got {self.n}"
            )
        if not 0 <= self.seed <= MAX_SEED:
            raise ConfigurationError(
                f"seed must be a 64-bit unsigned integer, got {self.seed}"
            )
        if self.streams < 1:
            raise ConfigurationError(f"streams must be >= 1, got {self.streams}")
        if self.d_max < 2:
            raise ConfigurationError(f"d_max must be >= 2, got {self.d_max}")

    @property
    def terms_per_stream(self) -> int:
        return ceil_div(self.n, self.streams)

    def to_dict(self) -> Dict:
        config = asdict(self)
        config["distribution"] = self.distribution.value
        return config
