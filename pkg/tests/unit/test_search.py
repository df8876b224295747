"""Unit tests for the activation-function search."""

import math
from dataclasses import replace

import pytest

from stochmatch.constraints import MonotoneConstraint
from stochmatch.ratiocalc.ratio import objective
from stochmatch.search import (
    ActivationSearch,
    ActivationSearchResult,
    AscentState,
    CoordinateAscent,
    LevelGrid,
    SearchConfig,
    optimize,
    random_start,
)

ONE_MINUS_INV_E = 1.0 - math.exp(-1.0)


class TestLevelGrid:
    """Tests for LevelGrid."""

    def test_size_and_values(self):
        """Test the default 0.025 grid."""
        grid = LevelGrid(0.025)
        assert grid.size == 81
        assert grid.value(0) == 0.0
        assert grid.value(80) == 2.0
        assert grid.value(40) == pytest.approx(1.0)

    def test_level_of_rounds_to_nearest(self):
        """Test nearest-level lookup with clamping."""
        grid = LevelGrid(0.5)
        assert grid.level_of(1.2) == 2
        assert grid.level_of(1.3) == 3
        assert grid.level_of(-1.0) == 0
        assert grid.level_of(5.0) == 4

    def test_activation(self):
        """Test conversion of level indices to a function."""
        f = LevelGrid(0.5).activation((0, 2, 4))
        assert f.values == (0.0, 1.0, 2.0)

    @pytest.mark.parametrize("step", [0.0, -0.1, 0.3, 2.5])
    def test_invalid_step(self, step):
        """Test that steps not dividing [0, 2] are rejected."""
        with pytest.raises(ValueError, match="step"):
            LevelGrid(step)


class TestAscentState:
    """Tests for AscentState."""

    def test_initial_sorts(self):
        """Test that starting levels are repaired by sorting."""
        state = AscentState.initial((3, 1, 2), restart=4)
        assert state.levels == (1, 2, 3)
        assert state.restart == 4
        assert not state.feasible

    def test_moved_resorts(self):
        """Test that a move past a neighbour is re-sorted."""
        state = AscentState.initial((1, 2))
        assert state.moved(((0, 2),), grid_size=5) == (2, 3)

    def test_moved_off_grid(self):
        """Test that leaving the grid yields None."""
        state = AscentState.initial((0, 4))
        assert state.moved(((0, -1),), grid_size=5) is None
        assert state.moved(((1, 1),), grid_size=5) is None

    def test_moved_without_change(self):
        """Test that a swap that sorts back to the same levels yields None."""
        state = AscentState.initial((1, 2))
        assert state.moved(((0, 1), (1, -1)), grid_size=5) is None

    def test_ordering_prefers_earlier_restart_on_ties(self):
        """Test that max() picks the lowest restart among equal objectives."""
        a = AscentState((1,), objective=0.5, restart=0)
        b = AscentState((1,), objective=0.5, restart=3)
        c = AscentState((1,), objective=0.4, restart=1)
        assert max([b, c, a]) is a


class TestCoordinateAscent:
    """Tests for CoordinateAscent."""

    def test_evaluate_infeasible(self):
        """Test that a function with F(1) < 1 scores -inf."""
        ascent = CoordinateAscent(LevelGrid(1.0))
        assert ascent.evaluate((0,)) == -math.inf
        assert ascent.get_stats()["infeasible_rejections"] == 1

    def test_evaluate_caches(self):
        """Test that repeated candidates are evaluated once."""
        ascent = CoordinateAscent(LevelGrid(1.0))
        first = ascent.evaluate((1,))
        second = ascent.evaluate((1,))
        assert first == second == pytest.approx(ONE_MINUS_INV_E, abs=1e-12)
        stats = ascent.get_stats()
        assert stats["candidates_evaluated"] == 1
        assert stats["distinct_candidates"] == 1

    def test_repair_walks_toward_one(self):
        """Test that an all-zero start is walked up to f = 1."""
        ascent = CoordinateAscent(LevelGrid(0.5))
        state = ascent.repair(AscentState.initial((0, 0, 0)))
        assert state.feasible
        assert state.levels == (2, 2, 2)
        assert ascent.get_stats()["repair_steps"] == 2

    def test_ascent_never_decreases(self, five_level_f):
        """Test that the end point is at least as good as a feasible start."""
        grid = LevelGrid(0.025)
        ascent = CoordinateAscent(grid, max_iterations=3)
        start = AscentState.initial(tuple(grid.level_of(v) for v in five_level_f.values))
        final = ascent.ascend(start)
        assert final.objective >= objective(five_level_f) - 1e-12

    def test_custom_constraints(self):
        """Test ascent under a constraint list without the mass check.

        f = 0 is then feasible with objective 0 and one step reaches f = 1.
        """
        ascent = CoordinateAscent(LevelGrid(1.0), constraints=[MonotoneConstraint()])
        final = ascent.ascend(AscentState.initial((0,)))
        assert final.levels == (1,)
        stats = ascent.get_stats()
        assert stats["repair_steps"] == 0
        assert stats["accepted_moves"] == 1

    def test_invalid_iterations(self):
        with pytest.raises(ValueError, match="max_iterations"):
            CoordinateAscent(LevelGrid(1.0), max_iterations=0)


class TestSearchConfig:
    """Tests for SearchConfig validation."""

    def test_defaults(self):
        cfg = SearchConfig()
        assert (cfg.m, cfg.step, cfg.restarts) == (40, 0.025, 10)
        assert cfg.grid.size == 81

    @pytest.mark.parametrize("kwargs", [
        {"m": 0},
        {"restarts": 0},
        {"max_iterations": 0},
        {"seed": -1},
        {"step": 0.3},
        {"workers": 0},
    ])
    def test_invalid(self, kwargs):
        with pytest.raises(ValueError):
            SearchConfig(**kwargs)

    def test_initial_must_match_m(self, five_level_f):
        with pytest.raises(ValueError, match="expected 20"):
            SearchConfig(m=20, initial=five_level_f)


class TestRandomStart:
    """Tests for random starting points."""

    def test_deterministic(self):
        cfg = SearchConfig(m=40, seed=7)
        assert random_start(cfg, 3) == random_start(cfg, 3)

    def test_restarts_differ(self):
        cfg = SearchConfig(m=40, seed=7)
        assert random_start(cfg, 1) != random_start(cfg, 2)

    def test_shape(self):
        cfg = SearchConfig(m=40, seed=11)
        levels = random_start(cfg, 0)
        assert len(levels) == 40
        assert list(levels) == sorted(levels)
        assert all(0 <= k < cfg.grid.size for k in levels)


class TestActivationSearchResult:
    """Tests for ActivationSearchResult."""

    def test_no_solution(self):
        result = ActivationSearchResult(
            activation=None,
            report=None,
            stats={},
            restart_objectives=[-math.inf],
            no_solution_reason="nothing feasible",
        )
        assert not result.found_solution
        assert "nothing feasible" in repr(result)


class TestActivationSearch:
    """Tests for the search orchestrator."""

    def test_single_interval(self):
        """Test m = 1 on {0, 1, 2}: only f = 1 passes every constraint."""
        result = optimize(SearchConfig(m=1, step=1.0, restarts=2, seed=0))
        assert result.found_solution
        assert result.activation.values == (1.0,)
        assert result.report.certified == pytest.approx(ONE_MINUS_INV_E, abs=1e-12)

    def test_no_feasible_function(self):
        """Test that an empty feasible set is reported, not raised."""
        result = optimize(SearchConfig(m=1, step=2.0, restarts=1, seed=0))
        assert not result.found_solution
        assert result.report is None
        assert result.best_infeasible is not None
        assert "violated constraints" in result.no_solution_reason
        assert result.restart_objectives == [-math.inf]

    def test_deterministic_given_seed(self):
        cfg = SearchConfig(m=4, step=0.25, restarts=3, max_iterations=50, seed=5)
        a = optimize(cfg)
        b = optimize(cfg)
        assert a.activation == b.activation
        assert a.restart_objectives == b.restart_objectives

    def test_restarts_keep_their_own_stats(self):
        """Each restart runs its own ascent; the result sums their stats."""
        cfg = SearchConfig(m=4, step=0.25, restarts=3, max_iterations=50, seed=5)
        result = optimize(cfg)
        assert result.stats["restarts"] == 3
        assert result.stats["distinct_candidates"] <= result.stats["candidates_evaluated"]

    def test_workers_do_not_change_result(self):
        cfg = SearchConfig(m=4, step=0.25, restarts=3, max_iterations=50, seed=5)
        serial = optimize(cfg)
        parallel = optimize(replace(cfg, workers=2))
        assert parallel.activation == serial.activation
        assert parallel.restart_objectives == serial.restart_objectives
        assert parallel.stats == serial.stats

    def test_initial_used_for_first_restart(self, five_level_f):
        cfg = SearchConfig(m=40, restarts=3, initial=five_level_f)
        starts = ActivationSearch(cfg).starting_points()
        assert LevelGrid(0.025).activation(starts[0].levels).values == pytest.approx(five_level_f.values)
        assert [s.restart for s in starts] == [0, 1, 2]

    def test_seeded_with_certified_function_keeps_ratio(self, five_level_f):
        """Test that ascent from the certified function stays at or above 0.6503."""
        cfg = SearchConfig(m=40, restarts=1, max_iterations=5, initial=five_level_f)
        result = optimize(cfg)
        assert result.found_solution
        assert result.report.ratio >= 0.6503
        assert result.stats["restarts"] == 1


@pytest.mark.slow
class TestFullSearch:
    """Random restarts at m = 40."""

    def test_reaches_certified_ratio(self):
        result = optimize(SearchConfig(m=40, restarts=10, seed=42))
        assert result.found_solution
        assert result.report.is_certified
        assert result.report.certified >= 0.6503
