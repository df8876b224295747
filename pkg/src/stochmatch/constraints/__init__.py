"""Feasibility constraints on piecewise constant activation functions."""

from abc import ABC, abstractmethod
from typing import List, Optional, Sequence

from stochmatch.config import config
from stochmatch.domain.activation import F_MAX, F_MIN, PiecewiseConstantF
from stochmatch.ratiocalc.ratio import cons1, cons1_conservative, cons2, cons2_conservative


class Constraint(ABC):
    """Base class for activation-function constraints."""

    name: str = "constraint"

    @abstractmethod
    def is_satisfied(self, f: PiecewiseConstantF) -> bool:
        """Check if an activation function satisfies this constraint."""
        pass

    @abstractmethod
    def violation(self, f: PiecewiseConstantF) -> Optional[str]:
        """Get violation reason if constraint is not satisfied."""
        pass

    def partial_ok(self, values: Sequence[float]) -> bool:
        """Cheap check on raw candidate levels before an activation is built."""
        return True


class MonotoneConstraint(Constraint):
    """f_1 <= f_2 <= ... <= f_m."""

    name = "monotone"

    def is_satisfied(self, f: PiecewiseConstantF) -> bool:
        return f.is_monotone

    def violation(self, f: PiecewiseConstantF) -> Optional[str]:
        for k, (a, b) in enumerate(zip(f.values, f.values[1:]), start=1):
            if a > b:
                return f"f is not non-decreasing: f_{k} = {a} > f_{k + 1} = {b}"
        return None

    def partial_ok(self, values: Sequence[float]) -> bool:
        return all(a <= b for a, b in zip(values, values[1:]))


class RangeConstraint(Constraint):
    """Every level lies in [low, high] (default [0, 2])."""

    name = "range"

    def __init__(self, low: float = F_MIN, high: float = F_MAX):
        if low > high:
            raise ValueError(f"low ({low}) cannot exceed high ({high})")
        self.low = low
        self.high = high

    def is_satisfied(self, f: PiecewiseConstantF) -> bool:
        return self.partial_ok(f.values)

    def violation(self, f: PiecewiseConstantF) -> Optional[str]:
        for k, v in enumerate(f.values, start=1):
            if not self.low <= v <= self.high:
                return f"f_{k} = {v} outside [{self.low}, {self.high}]"
        return None

    def partial_ok(self, values: Sequence[float]) -> bool:
        return all(self.low <= v <= self.high for v in values)


class MassConstraint(Constraint):
    """F(1) >= minimum, i.e. f_1 + ... + f_m >= m * minimum."""

    name = "mass"

    def __init__(self, minimum: float = 1.0, tol: float = config.tolerances.certificate):
        self.minimum = minimum
        self.tol = tol

    def is_satisfied(self, f: PiecewiseConstantF) -> bool:
        return f.total >= self.minimum - self.tol

    def violation(self, f: PiecewiseConstantF) -> Optional[str]:
        if not self.is_satisfied(f):
            return f"F(1) = {f.total:.12g} < {self.minimum}"
        return None

    def partial_ok(self, values: Sequence[float]) -> bool:
        return sum(values) >= len(values) * (self.minimum - self.tol)


class DerivativeConstraint(Constraint):
    """cons1 <= 0 or cons2 <= 0, exact or with endpoint-bounded weights."""

    def __init__(
        self,
        which: str,
        conservative: bool = False,
        tol: float = config.tolerances.certificate,
    ):
        if which not in ("cons1", "cons2"):
            raise ValueError(f"which must be 'cons1' or 'cons2', got {which!r}")
        self.which = which
        self.conservative = conservative
        self.tol = tol
        self.name = f"{which}_conservative" if conservative else which

    def value(self, f: PiecewiseConstantF) -> float:
        if self.which == "cons1":
            return cons1_conservative(f) if self.conservative else cons1(f)
        return cons2_conservative(f) if self.conservative else cons2(f)

    def is_satisfied(self, f: PiecewiseConstantF) -> bool:
        return self.value(f) <= self.tol

    def violation(self, f: PiecewiseConstantF) -> Optional[str]:
        value = self.value(f)
        if value > self.tol:
            return f"{self.name} = {value:.6e} > 0"
        return None


def default_activation_constraints(conservative: bool = False) -> List[Constraint]:
    """Monotone, range, F(1) >= 1, cons1 <= 0 and cons2 <= 0, cheapest first."""
    return [
        RangeConstraint(),
        MonotoneConstraint(),
        MassConstraint(),
        DerivativeConstraint("cons1", conservative=conservative),
        DerivativeConstraint("cons2", conservative=conservative),
    ]


__all__ = [
    "Constraint",
    "DerivativeConstraint",
    "MassConstraint",
    "MonotoneConstraint",
    "RangeConstraint",
    "default_activation_constraints",
]
