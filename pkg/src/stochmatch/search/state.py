"""Search state for coordinate ascent over discretized activation functions."""

import math
from dataclasses import dataclass
from typing import Optional, Tuple

from stochmatch.domain.activation import F_MAX, F_MIN, PiecewiseConstantF


@dataclass(frozen=True)
class LevelGrid:
    """Candidate levels 0, step, 2*step, ..., 2.

    Attributes:
        step: Spacing between levels; 2 / step must be an integer
    """
    step: float

    def __post_init__(self):
        if self.step <= 0 or self.step > F_MAX:
            raise ValueError(f"step must lie in (0, {F_MAX}], got {self.step}")
        count = (F_MAX - F_MIN) / self.step
        if abs(count - round(count)) > 1e-9:
            raise ValueError(f"step {self.step} does not divide [{F_MIN}, {F_MAX}]")

    @property
    def size(self) -> int:
        return int(round((F_MAX - F_MIN) / self.step)) + 1

    def value(self, level: int) -> float:
        return min(F_MIN + level * self.step, F_MAX)

    def level_of(self, value: float) -> int:
        """Nearest level to ``value``."""
        return min(max(int(math.floor((value - F_MIN) / self.step + 0.5)), 0), self.size - 1)

    def activation(self, levels: Tuple[int, ...]) -> PiecewiseConstantF:
        return PiecewiseConstantF(tuple(self.value(k) for k in levels))


@dataclass(frozen=True)
class AscentState:
    """A sorted vector of level indices with its objective.

    Attributes:
        levels: Level index per interval, non-decreasing
        objective: min{r1(y*), r2(y*)}, or -inf when infeasible
        restart: Restart this state belongs to
    """
    levels: Tuple[int, ...]
    objective: float = -math.inf
    restart: int = 0

    @property
    def feasible(self) -> bool:
        return self.objective > -math.inf

    @classmethod
    def initial(cls, levels: Tuple[int, ...], restart: int = 0) -> "AscentState":
        return cls(levels=tuple(sorted(levels)), restart=restart)

    def moved(self, changes: Tuple[Tuple[int, int], ...], grid_size: int) -> Optional[Tuple[int, ...]]:
        """Levels after applying (index, delta) changes and re-sorting.

        Returns None when a change leaves the grid or nothing changes.
        """
        levels = list(self.levels)
        for index, delta in changes:
            levels[index] += delta
            if not 0 <= levels[index] < grid_size:
                return None
        repaired = tuple(sorted(levels))
        if repaired == self.levels:
            return None
        return repaired

    def with_levels(self, levels: Tuple[int, ...], objective: float) -> "AscentState":
        return AscentState(levels=levels, objective=objective, restart=self.restart)

    def __lt__(self, other: "AscentState") -> bool:
        """Lower objective first; on ties the later restart ranks lower."""
        return (self.objective, -self.restart) < (other.objective, -other.restart)

    def __repr__(self) -> str:
        return f"AscentState(restart={self.restart}, m={len(self.levels)}, objective={self.objective:.6f})"
