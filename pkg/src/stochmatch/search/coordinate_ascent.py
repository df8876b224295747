"""Coordinate ascent on level indices with re-sorting repair."""

import logging
import math
from typing import Dict, List, Optional, Tuple

from stochmatch.config import config
from stochmatch.constraints import Constraint, default_activation_constraints
from stochmatch.ratiocalc.ratio import objective
from stochmatch.search.state import AscentState, LevelGrid

logger = logging.getLogger(__name__)

MIN_IMPROVEMENT = 1e-9
_PAIR_DIRECTIONS = ((1, -1), (-1, 1), (1, 1), (-1, -1))


class CoordinateAscent:
    """Feasibility-first coordinate ascent on min{r1(y*), r2(y*)}.

    A move shifts one level index by +-1 and re-sorts; it is accepted when
    the result is feasible and improves the objective by at least
    ``MIN_IMPROVEMENT``. Indices are scanned in order so the lowest index
    wins ties. When a full sweep finds nothing, paired moves on two indices
    at most ``pair_window`` apart are tried before stopping.
    """

    def __init__(
        self,
        grid: LevelGrid,
        constraints: Optional[List[Constraint]] = None,
        max_iterations: int = config.search.max_iterations,
        paired_moves: bool = True,
        pair_window: int = 6,
    ):
        if max_iterations < 1:
            raise ValueError(f"max_iterations must be >= 1, got {max_iterations}")
        self.grid = grid
        self.constraints = constraints if constraints is not None else default_activation_constraints()
        self.max_iterations = max_iterations
        self.paired_moves = paired_moves
        self.pair_window = pair_window
        self._cache: Dict[Tuple[int, ...], float] = {}

        self.stats = {
            "candidates_evaluated": 0,
            "infeasible_rejections": 0,
            "accepted_moves": 0,
            "accepted_paired_moves": 0,
            "repair_steps": 0,
            "restarts": 0,
        }

    def evaluate(self, levels: Tuple[int, ...]) -> float:
        """Objective of a candidate, -inf when any constraint fails."""
        cached = self._cache.get(levels)
        if cached is not None:
            return cached

        self.stats["candidates_evaluated"] += 1
        values = [self.grid.value(k) for k in levels]
        value = -math.inf
        if all(c.partial_ok(values) for c in self.constraints):
            f = self.grid.activation(levels)
            if all(c.is_satisfied(f) for c in self.constraints):
                value = objective(f)
        if value == -math.inf:
            self.stats["infeasible_rejections"] += 1
        self._cache[levels] = value
        return value

    def repair(self, state: AscentState) -> AscentState:
        """Walk an infeasible start toward f = 1 one level per index until feasible."""
        target = self.grid.level_of(1.0)
        levels = state.levels
        value = self.evaluate(levels)
        while value == -math.inf:
            stepped = tuple(k + (target > k) - (target < k) for k in levels)
            if stepped == levels:
                break
            levels = tuple(sorted(stepped))
            value = self.evaluate(levels)
            self.stats["repair_steps"] += 1
        if value == -math.inf:
            logger.debug(f"Restart {state.restart}: no feasible point on the path to f = 1")
        return state.with_levels(levels, value)

    def ascend(self, start: AscentState) -> AscentState:
        """Run one restart from ``start`` to a local optimum or the iteration cap."""
        self.stats["restarts"] += 1
        state = self.repair(start)
        if not state.feasible:
            return state

        m = len(state.levels)
        iterations = 0
        while iterations < self.max_iterations:
            improved = False
            for index in range(m):
                best: Optional[Tuple[float, Tuple[int, ...]]] = None
                for delta in (1, -1):
                    candidate = state.moved(((index, delta),), self.grid.size)
                    if candidate is None:
                        continue
                    value = self.evaluate(candidate)
                    if value >= state.objective + MIN_IMPROVEMENT and (best is None or value > best[0]):
                        best = (value, candidate)
                if best is not None:
                    state = state.with_levels(best[1], best[0])
                    self.stats["accepted_moves"] += 1
                    iterations += 1
                    improved = True
                    if iterations >= self.max_iterations:
                        break

            if improved:
                continue
            if not self.paired_moves:
                break
            paired = self._paired_move(state)
            if paired is None:
                break
            state = paired
            self.stats["accepted_paired_moves"] += 1
            iterations += 1

        logger.debug(f"Restart {state.restart} ended at {state.objective:.6f} after {iterations} moves")
        return state

    def _paired_move(self, state: AscentState) -> Optional[AscentState]:
        m = len(state.levels)
        for i in range(m):
            for j in range(i + 1, min(i + 1 + self.pair_window, m)):
                for di, dj in _PAIR_DIRECTIONS:
                    candidate = state.moved(((i, di), (j, dj)), self.grid.size)
                    if candidate is None:
                        continue
                    value = self.evaluate(candidate)
                    if value >= state.objective + MIN_IMPROVEMENT:
                        return state.with_levels(candidate, value)
        return None

    def get_stats(self) -> Dict[str, int]:
        """Get search statistics."""
        stats = self.stats.copy()
        stats["distinct_candidates"] = len(self._cache)
        return stats
