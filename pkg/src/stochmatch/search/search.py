"""Search orchestrator for activation-function optimization."""

import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple

import numpy as np

from stochmatch.config import config
from stochmatch.domain.activation import PiecewiseConstantF
from stochmatch.ratiocalc.certificate import RatioReport, check_all
from stochmatch.search.coordinate_ascent import CoordinateAscent
from stochmatch.search.state import AscentState, LevelGrid

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class SearchConfig:
    """Parameters of one search run.

    Attributes:
        m: Number of intervals
        step: Level spacing on [0, 2]
        restarts: Number of restarts
        max_iterations: Accepted-move cap per restart
        seed: Seed for the random starting points
        initial: Optional starting function for restart 0
        workers: Processes to spread restarts over
    """
    m: int = config.search.m
    step: float = config.search.step
    restarts: int = config.search.restarts
    max_iterations: int = config.search.max_iterations
    seed: int = config.cli.seed
    initial: Optional[PiecewiseConstantF] = None
    workers: int = config.search.workers

    def __post_init__(self):
        if self.m < 1:
            raise ValueError(f"m must be >= 1, got {self.m}")
        if self.restarts < 1:
            raise ValueError(f"restarts must be >= 1, got {self.restarts}")
        if self.max_iterations < 1:
            raise ValueError(f"max_iterations must be >= 1, got {self.max_iterations}")
        if self.seed < 0:
            raise ValueError(f"seed must be >= 0, got {self.seed}")
        if self.workers < 1:
            raise ValueError(f"workers must be >= 1, got {self.workers}")
        LevelGrid(self.step)
        if self.initial is not None and self.initial.m != self.m:
            raise ValueError(f"initial function has m = {self.initial.m}, expected {self.m}")

    @property
    def grid(self) -> LevelGrid:
        return LevelGrid(self.step)


def random_start(cfg: SearchConfig, restart: int) -> Tuple[int, ...]:
    """Three-stage starting point (0, then 1, then 2) with random breakpoints and jitter.

    The zero stage ends at an index drawn from [0, max(1, 0.1 m)] and the
    final stage starts at an index drawn from [0.55 m, 0.85 m]; every level
    then moves one grid step up or down with probability 0.2 each way.
    """
    rng = np.random.default_rng([cfg.seed, restart])
    grid = cfg.grid
    m = cfg.m
    zero_end = int(rng.integers(0, max(1, round(0.1 * m)) + 1))
    two_start = int(rng.integers(round(0.55 * m), round(0.85 * m) + 1))
    two_start = max(two_start, zero_end)

    one, two = grid.level_of(1.0), grid.level_of(2.0)
    levels = [0 if k < zero_end else one if k < two_start else two for k in range(m)]
    jitter = rng.choice([-1, 0, 1], size=m, p=[0.2, 0.6, 0.2])
    levels = [min(max(level + int(d), 0), grid.size - 1) for level, d in zip(levels, jitter)]
    return tuple(sorted(levels))


@dataclass(frozen=True)
class _Restart:
    grid: LevelGrid
    max_iterations: int
    start: AscentState


def _run_restart(task: _Restart) -> Tuple[AscentState, Dict[str, int]]:
    """One restart with its own ascent, evaluation cache and stats."""
    ascent = CoordinateAscent(task.grid, max_iterations=task.max_iterations)
    return ascent.ascend(task.start), ascent.get_stats()


class ActivationSearchResult:
    """Result of an activation-function search.

    Attributes:
        activation: Best feasible function, or None
        report: check_all of ``activation``, or None
        stats: Search statistics
        restart_objectives: Final objective per restart
        best_infeasible: Best restart end point when none was feasible
        no_solution_reason: Explanation if nothing feasible was found
    """

    def __init__(
        self,
        activation: Optional[PiecewiseConstantF],
        report: Optional[RatioReport],
        stats: Dict[str, int],
        restart_objectives: List[float],
        best_infeasible: Optional[PiecewiseConstantF] = None,
        no_solution_reason: Optional[str] = None,
    ):
        self.activation = activation
        self.report = report
        self.stats = stats
        self.restart_objectives = restart_objectives
        self.best_infeasible = best_infeasible
        self.no_solution_reason = no_solution_reason

    @property
    def found_solution(self) -> bool:
        return self.activation is not None

    def __repr__(self) -> str:
        if self.found_solution:
            return f"ActivationSearchResult(ratio={self.report.ratio:.6f}, m={self.activation.m})"
        return f"ActivationSearchResult(no solution: {self.no_solution_reason})"


class ActivationSearch:
    """Orchestrator for the restarted coordinate ascent.

    Example:
        >>> result = ActivationSearch(SearchConfig(m=40, restarts=10, seed=7)).run()
        >>> if result.found_solution:
        ...     print(result.report.ratio)
    """

    def __init__(self, cfg: SearchConfig):
        self.config = cfg

    def starting_points(self) -> List[AscentState]:
        grid = self.config.grid
        starts = []
        for restart in range(self.config.restarts):
            if restart == 0 and self.config.initial is not None:
                levels = tuple(sorted(grid.level_of(v) for v in self.config.initial.values))
            else:
                levels = random_start(self.config, restart)
            starts.append(AscentState.initial(levels, restart))
        return starts

    def run(self) -> ActivationSearchResult:
        cfg = self.config
        logger.info(
            f"Starting activation search: m={cfg.m}, step={cfg.step}, "
            f"restarts={cfg.restarts}, seed={cfg.seed}, workers={cfg.workers}"
        )
        tasks = [_Restart(cfg.grid, cfg.max_iterations, start) for start in self.starting_points()]
        if cfg.workers == 1:
            outcomes = [_run_restart(t) for t in tasks]
        else:
            with ProcessPoolExecutor(max_workers=cfg.workers) as pool:
                outcomes = list(pool.map(_run_restart, tasks))

        finals: List[AscentState] = []
        stats: Dict[str, int] = {}
        for final, restart_stats in outcomes:
            logger.info(f"Restart {final.restart}: objective {final.objective:.6f}")
            finals.append(final)
            for key, value in restart_stats.items():
                stats[key] = stats.get(key, 0) + value

        objectives = [s.objective for s in finals]
        best = max(finals)

        if not best.feasible:
            reason = self._diagnose_no_solution(stats)
            logger.warning(f"No feasible activation function: {reason}")
            return ActivationSearchResult(
                activation=None,
                report=None,
                stats=stats,
                restart_objectives=objectives,
                best_infeasible=cfg.grid.activation(best.levels),
                no_solution_reason=reason,
            )

        activation = cfg.grid.activation(best.levels)
        report = check_all(activation)
        if not report.is_certified:
            logger.warning(f"Best candidate failed the full check: {list(report.violations)}")
        logger.info(f"Search complete: best objective {best.objective:.6f} from restart {best.restart}")

        return ActivationSearchResult(
            activation=activation,
            report=report,
            stats=stats,
            restart_objectives=objectives,
        )

    def _diagnose_no_solution(self, stats: Dict[str, int]) -> str:
        reasons = []
        if stats["candidates_evaluated"] == 0:
            reasons.append("No candidates were evaluated")
        if stats["infeasible_rejections"] > 0:
            reasons.append(f"{stats['infeasible_rejections']} candidates violated constraints")
        if stats["repair_steps"] > 0:
            reasons.append("starting points could not be repaired to feasibility")
        if not reasons:
            reasons.append("Unknown reason - no feasible activation function found")

        explanation = "; ".join(reasons)
        if self.config.step > 1.0 - 1e-12 and self.config.m == 1:
            explanation += ". Suggestions: use a finer level step"
        return explanation


def optimize(cfg: SearchConfig) -> ActivationSearchResult:
    """Best feasible f found by restarted coordinate ascent, with its certificate."""
    return ActivationSearch(cfg).run()
