"""Translate comparisons between neighbouring error terms into comparisons between innovations.

With unit coefficients, ``xi_{k+1} - xi_k = eps_{k+1} - eps_{k-q}``, so every up/down step of the
MA(q) series is decided by a single pair of innovations. When the pairs behind a pattern share no
innovation the conditions are independent and each holds with probability 1/2.
"""
import itertools
from fractions import Fraction
from typing import List, NamedTuple, Optional, Sequence, Tuple

from masim.exceptions import DomainError
from masim.sim.analytic.model import prob_max

UP = 1
DOWN = -1


class InnovationCondition(NamedTuple):
    """``eps[larger] > eps[smaller]`` with innovation indices relative to the pattern start."""

    larger: int
    smaller: int


def step_innovations(k: int, q: int) -> Tuple[int, int]:
    """Innovations (entering, leaving) the window between ``xi_k`` and ``xi_{k+1}``."""
    return k + 1, k - q


def pattern_conditions(
    signs: Sequence[int], start: int, q: int
) -> List[InnovationCondition]:
    """Innovation conditions for ``signs[j]`` being the direction of ``xi_{start+j} -> xi_{start+j+1}``."""
    if q < 1:
        raise DomainError(f"q must be >= 1 for the window identity to separate, got {q}")
    conditions = []
    for j, sign in enumerate(signs):
        entering, leaving = step_innovations(start + j, q)
        if sign == UP:
            conditions.append(InnovationCondition(entering, leaving))
        elif sign == DOWN:
            conditions.append(InnovationCondition(leaving, entering))
        else:
            raise DomainError(f"signs must be +1 or -1, got {sign}")
    return conditions


def conditions_separable(conditions: Sequence[InnovationCondition]) -> bool:
    indices = [i for cond in conditions for i in cond]
    return len(indices) == len(set(indices))


def peak_gap_patterns(d: int) -> List[Tuple[int, ...]]:
    """All step patterns over ``xi_{i-1} .. xi_{i+d+1}`` with peaks at i and i+d and none between."""
    if d < 2:
        raise DomainError(f"d must be >= 2, got {d}")
    patterns = []
    for interior in itertools.product((UP, DOWN), repeat=d - 2):
        if any(a == UP and b == DOWN for a, b in zip(interior, interior[1:])):
            continue
        patterns.append((UP, DOWN) + interior + (UP, DOWN))
    return patterns


def separated_probability(d: int, q: int) -> Optional[Fraction]:
    """Pr[d] from separated pair conditions, or ``None`` when some pattern does not separate."""
    total = Fraction(0)
    for signs in peak_gap_patterns(d):
        # step j runs from xi_{i-1+j}; take i = 0
        conditions = pattern_conditions(signs, start=-1, q=q)
        if not conditions_separable(conditions):
            return None
        total += Fraction(1, 2 ** len(conditions))
    return total / prob_max()
