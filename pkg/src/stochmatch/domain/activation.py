"""Piecewise constant activation functions f: [0, 1] -> [0, 2]."""

import math
from dataclasses import dataclass
from functools import cached_property
from typing import Callable, Dict, Tuple

F_MIN = 0.0
F_MAX = 2.0


@dataclass(frozen=True)
class PiecewiseConstantF:
    """Activation function with f(t) = f_k on ((k-1)/m, k/m].

    f(0) takes f_1. Values must lie in [0, 2]; monotonicity is reported by
    :attr:`is_monotone` rather than enforced here so that candidate
    functions can be checked against constraints.

    Attributes:
        values: f_1, ..., f_m
    """
    values: Tuple[float, ...]

    def __post_init__(self):
        values = tuple(float(v) for v in self.values)
        if not values:
            raise ValueError("Activation function needs at least one interval")
        for k, v in enumerate(values, start=1):
            if not math.isfinite(v) or v < F_MIN or v > F_MAX:
                raise ValueError(f"f_{k} = {v} outside [{F_MIN}, {F_MAX}]")
        object.__setattr__(self, "values", values)

    @classmethod
    def constant(cls, value: float, m: int = 1) -> "PiecewiseConstantF":
        return cls((value,) * m)

    @classmethod
    def from_callable(cls, m: int, func: Callable[[float], float]) -> "PiecewiseConstantF":
        """Discretize ``func`` by its value at each interval midpoint."""
        if m < 1:
            raise ValueError(f"m must be >= 1, got {m}")
        return cls(tuple(func((k - 0.5) / m) for k in range(1, m + 1)))

    @property
    def m(self) -> int:
        return len(self.values)

    @property
    def is_monotone(self) -> bool:
        return all(a <= b for a, b in zip(self.values, self.values[1:]))

    @cached_property
    def k_star(self) -> int:
        """Largest k with f_k <= 1, or 0 if f exceeds 1 everywhere."""
        k = 0
        for idx, v in enumerate(self.values, start=1):
            if v <= 1.0:
                k = idx
        return k

    @property
    def t_star(self) -> float:
        return self.k_star / self.m

    @cached_property
    def cumulative(self) -> Tuple[float, ...]:
        """F at the breakpoints 0, 1/m, ..., 1."""
        out = [0.0]
        for k in range(1, self.m + 1):
            out.append(math.fsum(self.values[:k]) / self.m)
        return tuple(out)

    @property
    def total(self) -> float:
        """F(1) = (1/m) * sum f_k."""
        return self.cumulative[-1]

    def interval_of(self, t: float) -> int:
        """1-based interval index k with t in ((k-1)/m, k/m]; t = 0 maps to 1."""
        # snap products within rounding of a breakpoint onto it
        k = math.ceil(self.m * t - 1e-9)
        return min(max(k, 1), self.m)

    def value_at(self, t: float) -> float:
        return self.values[self.interval_of(t) - 1]

    def F(self, t: float) -> float:
        """Cumulative integral F(t) = int_0^t f."""
        if t <= 0.0:
            return 0.0
        if t >= 1.0:
            return self.total
        k = min(max(math.ceil(self.m * t), 1), self.m)
        return self.cumulative[k - 1] + self.values[k - 1] * (t - (k - 1) / self.m)

    def refine(self, factor: int) -> "PiecewiseConstantF":
        """The same function represented on ``factor * m`` intervals."""
        if factor < 1:
            raise ValueError(f"factor must be >= 1, got {factor}")
        return PiecewiseConstantF(tuple(v for v in self.values for _ in range(factor)))

    def to_dict(self) -> Dict[str, object]:
        return {"m": self.m, "values": list(self.values)}

    def __repr__(self) -> str:
        return f"PiecewiseConstantF(m={self.m}, F(1)={self.total:.6f}, t*={self.t_star:.4f})"


def five_level_activation(m: int = 40) -> PiecewiseConstantF:
    """Five-level step function certified at 0.6503 (breakpoints 0.05, 0.075, 0.675, 0.7)."""
    def f(t: float) -> float:
        if t < 0.05:
            return 0.0
        if t < 0.075:
            return 0.4
        if t < 0.675:
            return 1.0
        if t < 0.7:
            return 1.2
        return 2.0

    return PiecewiseConstantF.from_callable(m, f)


def msm_activation(m: int = 20) -> PiecewiseConstantF:
    """Three-stage multistage suggested matching: 0 until 0.05, 1 until 0.75, then 2."""
    def f(t: float) -> float:
        if t <= 0.05:
            return 0.0
        if t < 0.75:
            return 1.0
        return 2.0

    return PiecewiseConstantF.from_callable(m, f)

