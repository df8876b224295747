"""Arrival rates of the extended online types at a fixed time."""

from dataclasses import dataclass, field
from typing import Dict, Tuple

from stochmatch.domain.activation import PiecewiseConstantF
from stochmatch.domain.kernel import KernelInstance, VertexClass


@dataclass(frozen=True)
class ExtendedRates:
    """Rates of the extended types of one second-class type i at time t.

    Attributes:
        type_id: Online type i
        total: i(*,*), the full arrival rate lambda_i
        none: i(⊥,⊥)
        single: i(j,⊥) per first choice j
        double: i(j,j') per ordered pair (j, j')
        first_choice: i(j,*) per first choice j
    """
    type_id: str
    total: float
    none: float
    single: Dict[str, float] = field(default_factory=dict)
    double: Dict[Tuple[str, str], float] = field(default_factory=dict)
    first_choice: Dict[str, float] = field(default_factory=dict)

    @property
    def accounted(self) -> float:
        """Sum over all extended types; equals ``total``."""
        return self.none + sum(self.single.values()) + sum(self.double.values())


def extended_rates(
    kernel: KernelInstance,
    f: PiecewiseConstantF,
    t: float,
) -> Dict[str, ExtendedRates]:
    """Rate table for every second-class type at time t.

    With a = min(f(t), 1):
    i(j,⊥) = (lambda/2) a min(2 - f(t), 1), i(j,j') = (lambda/2) a max(f(t) - 1, 0),
    i(j,*) = (lambda/2) a and i(⊥,⊥) = lambda (1 - a).

    Raises:
        ValueError: If t is outside [0, 1]
    """
    if not 0.0 <= t <= 1.0:
        raise ValueError(f"t must lie in [0, 1], got {t}")

    level = f.value_at(t)
    active = min(level, 1.0)
    single_share = min(2.0 - level, 1.0)
    double_share = max(level - 1.0, 0.0)

    table: Dict[str, ExtendedRates] = {}
    for online in kernel.instance.online_types:
        if kernel.classes[online.id] is not VertexClass.SECOND:
            continue
        half = online.rate / 2.0
        j, k = online.neighbors
        table[online.id] = ExtendedRates(
            type_id=online.id,
            total=online.rate,
            none=online.rate * (1.0 - active),
            single={j: half * active * single_share, k: half * active * single_share},
            double={(j, k): half * active * double_share, (k, j): half * active * double_share},
            first_choice={j: half * active, k: half * active},
        )
    return table
