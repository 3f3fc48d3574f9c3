from enum import Enum
from typing import Optional, Tuple, Union

import numpy as np


class InnovationDistribution(str, Enum):
    """Law of the i.i.d. innovations driving the MA(q) process.

    Every variant is continuous, so ties between innovations (and hence between error terms) have
    probability zero. Sampling is a pure function of the generator state.
    """

    UNIFORM = "uniform"
    NORMAL = "normal"
    EXPONENTIAL = "exponential"

    def sample(
        self, rng: np.random.Generator, size: Optional[Union[int, Tuple[int, ...]]] = None
    ) -> Union[float, np.ndarray]:
        if self is InnovationDistribution.UNIFORM:
            draws = rng.random(size)
        elif self is InnovationDistribution.NORMAL:
            draws = rng.standard_normal(size)
        else:
            draws = rng.standard_exponential(size)
        if size is None:
            return float(draws)
        return draws

    @classmethod
    def from_name(cls, name: Union[str, "InnovationDistribution"]):
        if isinstance(name, cls):
            return name
        try:
            return cls(str(name).lower())
        except ValueError:
            raise ValueError(
                f"Unknown innovation distribution {name!r}, expected one of "
                f"{[d.value for d in cls]}"
            )
