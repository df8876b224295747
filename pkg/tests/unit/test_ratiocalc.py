"""Tests for the closed-form ratio evaluators and the certificate."""

import math

import numpy as np
import pandas as pd
import pytest
from scipy import integrate

from stochmatch.config import Y_STAR
from stochmatch.domain.activation import PiecewiseConstantF, msm_activation
from stochmatch.ratiocalc.certificate import check_all, ratio_curve
from stochmatch.ratiocalc.integrals import SERIES_THRESHOLD, affine_exp_integral
from stochmatch.ratiocalc.ratio import (
    cons1,
    cons1_conservative,
    cons2,
    cons2_conservative,
    objective,
    r1,
    r2,
    z_of,
)

ONE_MINUS_INV_E = 1.0 - math.exp(-1.0)


def _quad(func, a: float, b: float, f: PiecewiseConstantF) -> float:
    if b <= a:
        return 0.0
    points = [k / f.m for k in range(1, f.m) if a < k / f.m < b]
    value, _ = integrate.quad(
        func, a, b, points=points or None, limit=500, epsabs=1e-14, epsrel=1e-13
    )
    return value


def _G(f: PiecewiseConstantF, t: float) -> float:
    return f.F(t) if t <= f.t_star else z_of(f, t)


def _oracle_r1(f: PiecewiseConstantF, y: float) -> float:
    return _quad(lambda t: math.exp(-y * t - (1 - y) * _G(f, t)), 0.0, 1.0, f)


def _oracle_r2(f: PiecewiseConstantF, y: float) -> float:
    f_star = f.F(f.t_star)
    main = _quad(lambda t: f.value_at(t) * math.exp(-y * t - (1 - y) * _G(f, t)), 0.0, 1.0, f)
    second = _quad(
        lambda t: (f.value_at(t) - 1)
        * math.exp(-y * f.t_star - (2 - y) * f_star - 2 * (t - f.t_star)),
        f.t_star, 1.0, f,
    )
    return main - second


def _oracle_cons(f: PiecewiseConstantF, weighted: bool) -> float:
    y = Y_STAR

    def integrand(t: float) -> float:
        g = _G(f, t)
        weight = f.value_at(t) if weighted else 1.0
        return weight * (g - t) * math.exp(-y * t - (1 - y) * g)

    total = _quad(integrand, 0.0, 1.0, f)
    if weighted:
        f_star = f.F(f.t_star)
        total += _quad(
            lambda t: (f.value_at(t) - 1) * (f.t_star - f_star)
            * math.exp(-2 * f_star - 2 * (t - f.t_star)),
            f.t_star, 1.0, f,
        )
    return total


def _random_monotone(m: int, count: int):
    rng = np.random.default_rng(1000 + m)
    for _ in range(count):
        yield PiecewiseConstantF(tuple(np.sort(rng.uniform(0.0, 2.0, m))))


class TestAffineExpIntegral:
    """Tests for the per-interval antiderivative."""

    def test_constant_exponent(self):
        """d = 0 reduces to the polynomial integral times e^c."""
        got = affine_exp_integral(2.0, 3.0, 0.5, 0.0, 0.25)
        expected = math.exp(0.5) * (2.0 * 0.25 + 3.0 * 0.25 ** 2 / 2)
        assert float(got) == pytest.approx(expected, rel=1e-14)

    @pytest.mark.parametrize("d", [-3.0, -0.5, SERIES_THRESHOLD * 0.9, SERIES_THRESHOLD * 1.1, 1e-7, 2.0])
    def test_matches_quadrature(self, d):
        """Both the closed and the series branch agree with quad."""
        h = 1.0
        p, q, c = 0.7, -1.3, -0.4
        expected, _ = integrate.quad(lambda s: (p + q * s) * math.exp(c + d * s), 0, h, epsabs=1e-15)
        assert float(affine_exp_integral(p, q, c, d, h)) == pytest.approx(expected, abs=1e-13)

    def test_branches_agree_at_threshold(self):
        """Series and closed forms meet continuously at the switch point."""
        h = 1.0
        below = float(affine_exp_integral(1.0, 1.0, 0.0, SERIES_THRESHOLD * (1 - 1e-9), h))
        above = float(affine_exp_integral(1.0, 1.0, 0.0, SERIES_THRESHOLD * (1 + 1e-9), h))
        assert below == pytest.approx(above, abs=1e-12)

    def test_broadcasts(self):
        """Array inputs give one integral per element."""
        out = affine_exp_integral(np.ones(3), 0.0, np.zeros(3), np.array([-1.0, 0.0, 1.0]), 0.5)
        assert out.shape == (3,)


class TestZ:
    """Tests for z(t)."""

    def test_equals_F_at_t_star(self, five_level_f):
        """z(t*) = F(t*)."""
        assert z_of(five_level_f, five_level_f.t_star) == pytest.approx(five_level_f.F(five_level_f.t_star), abs=1e-15)

    def test_five_level_value_at_one(self, five_level_f):
        """z(1) from F(t*) = 0.61, F(1) = 1.24, t* = 0.675."""
        decay = math.exp(-1.24)
        expected = decay * 0.61 + (1 - decay) * 1.24 + decay * 0.325
        assert z_of(five_level_f, 1.0) == pytest.approx(expected, abs=1e-12)
        assert z_of(five_level_f, 1.0) == pytest.approx(1.1518, abs=1e-4)

    def test_constant_two(self):
        """f = 2 gives z(t) = t (2 - e^-2)."""
        f = PiecewiseConstantF.constant(2.0, m=4)
        for t in (0.0, 0.3, 1.0):
            assert z_of(f, t) == pytest.approx(t * (2 - math.exp(-2)), abs=1e-14)

    def test_rejects_before_t_star(self, five_level_f):
        with pytest.raises(ValueError, match="defined on"):
            z_of(five_level_f, 0.5)

    def test_rejects_after_one(self, five_level_f):
        with pytest.raises(ValueError):
            z_of(five_level_f, 1.01)


class TestClosedFormAgainstQuadrature:
    """Closed-form r1, r2, cons1, cons2 against adaptive quadrature."""

    @pytest.mark.parametrize("m,count", [(1, 34), (5, 33), (40, 33)])
    def test_random_monotone(self, m, count):
        """Every evaluator agrees with quad to 1e-10."""
        for f in _random_monotone(m, count):
            for y in (0.0, 0.15, Y_STAR, 1.0):
                assert r1(f, y) == pytest.approx(_oracle_r1(f, y), abs=1e-10)
                assert r2(f, y) == pytest.approx(_oracle_r2(f, y), abs=1e-10)
            assert cons1(f) == pytest.approx(_oracle_cons(f, weighted=False), abs=1e-10)
            assert cons2(f) == pytest.approx(_oracle_cons(f, weighted=True), abs=1e-10)

    def test_five_level_function(self, five_level_f):
        assert r1(five_level_f, Y_STAR) == pytest.approx(_oracle_r1(five_level_f, Y_STAR), abs=1e-10)
        assert r2(five_level_f, Y_STAR) == pytest.approx(_oracle_r2(five_level_f, Y_STAR), abs=1e-10)


class TestKnownValues:
    """Analytic values for constant activation functions."""

    def test_constant_one_is_suggested_matching(self):
        """f = 1 gives 1 - 1/e for every y and cons1 = 0."""
        f = PiecewiseConstantF.constant(1.0, m=8)
        for y in np.linspace(0.0, Y_STAR, 64):
            assert r1(f, y) == pytest.approx(ONE_MINUS_INV_E, abs=1e-12)
            assert r2(f, y) == pytest.approx(ONE_MINUS_INV_E, abs=1e-12)
        assert cons1(f) == pytest.approx(0.0, abs=1e-15)
        assert cons2(f) == pytest.approx(0.0, abs=1e-15)

    def test_constant_zero(self):
        """f = 0 gives r1(y*) = (1 - e^-y*) / y* and r2 = 0."""
        f = PiecewiseConstantF.constant(0.0, m=3)
        assert r1(f, Y_STAR) == pytest.approx((1 - math.exp(-Y_STAR)) / Y_STAR, abs=1e-12)
        assert r1(f, Y_STAR) == pytest.approx(0.8611, abs=1e-4)
        assert r2(f, Y_STAR) == 0.0
        assert cons1(f) < 0

    def test_constant_two(self):
        """f = 2 has t* = 0 and only the post-t* branch contributes."""
        f = PiecewiseConstantF.constant(2.0, m=2)
        assert f.t_star == 0.0
        slope = Y_STAR + (1 - Y_STAR) * (2 - math.exp(-2))
        assert r1(f, Y_STAR) == pytest.approx((1 - math.exp(-slope)) / slope, abs=1e-12)

    def test_rejects_y_out_of_range(self, five_level_f):
        with pytest.raises(ValueError, match="y must lie"):
            r1(five_level_f, 1.5)
        with pytest.raises(ValueError):
            r2(five_level_f, -0.1)

    def test_accepts_raw_levels(self, five_level_f):
        """A plain sequence of levels evaluates like the activation itself."""
        assert r1(list(five_level_f.values), 0.2) == r1(five_level_f, 0.2)
        assert objective(list(five_level_f.values)) == objective(five_level_f)

    @pytest.mark.parametrize("factor", [2, 3])
    def test_refinement_invariance(self, five_level_f, factor):
        """The same f on factor * m intervals gives the same values."""
        fine = five_level_f.refine(factor)
        assert r1(fine, Y_STAR) == pytest.approx(r1(five_level_f, Y_STAR), abs=1e-12)
        assert r2(fine, Y_STAR) == pytest.approx(r2(five_level_f, Y_STAR), abs=1e-12)
        assert cons1(fine) == pytest.approx(cons1(five_level_f), abs=1e-12)
        assert cons2(fine) == pytest.approx(cons2(five_level_f), abs=1e-12)


class TestFiveLevelActivation:
    """The five-level activation certified at 0.6503."""

    def test_ratio(self, five_level_f):
        assert objective(five_level_f) >= 0.6503

    def test_constraints(self, five_level_f):
        assert cons1(five_level_f) <= 0
        assert cons2(five_level_f) <= 0

    def test_conservative_dominates_exact(self, five_level_f):
        """Endpoint-bounded weights never decrease the constraint values."""
        assert cons1_conservative(five_level_f) >= cons1(five_level_f) - 1e-15
        assert cons2_conservative(five_level_f) >= cons2(five_level_f) - 1e-15

    def test_shipped_file_matches_builder(self, five_level_f, shipped_five_level_f):
        assert shipped_five_level_f.values == five_level_f.values


class TestCheckAll:
    """Tests for the full certificate."""

    def test_five_level_certified(self, five_level_f):
        report = check_all(five_level_f)
        assert report.is_certified
        assert report.certified >= 0.6503
        assert report.F1 == pytest.approx(1.24, abs=1e-12)
        assert report.t_star == pytest.approx(0.675)
        assert all(report.flags.values())
        assert report.violations == ()

    def test_min_is_min_of_r1_r2(self, five_level_f):
        report = check_all(five_level_f)
        assert report.ratio == min(report.r1, report.r2)
        assert report.to_dict()["min"] == report.ratio

    def test_constant_one_certified_at_mass_boundary(self):
        """F(1) = 1 exactly counts as valid."""
        report = check_all(PiecewiseConstantF.constant(1.0, m=4))
        assert report.mass_ok
        assert report.certified == pytest.approx(ONE_MINUS_INV_E, abs=1e-12)

    def test_constant_zero_not_certified(self):
        report = check_all(PiecewiseConstantF.constant(0.0))
        assert not report.mass_ok
        assert report.certified is None
        assert any("F(1)" in v for v in report.violations)

    def test_constant_two_mass(self):
        report = check_all(PiecewiseConstantF.constant(2.0))
        assert report.F1 == 2.0
        assert report.mass_ok

    def test_msm_report_produced(self):
        """The three-stage function yields a full report; no target value."""
        report = check_all(msm_activation())
        assert report.m == 20
        assert 0.0 < report.ratio < 1.0
        assert set(report.to_dict()["flags"]) == {"mass", "cons1", "cons2", "monotone", "y_grid"}

    def test_rejects_non_monotone(self):
        with pytest.raises(ValueError, match="non-decreasing"):
            check_all(PiecewiseConstantF((1.0, 0.5, 2.0)))

    def test_y_grid_minimum_at_y_star(self, five_level_f):
        report = check_all(five_level_f)
        assert report.y_grid_ok
        assert report.y_grid_min[0] >= report.r1 - 1e-9
        assert report.y_grid_min[1] >= report.r2 - 1e-9


class TestRatioCurve:
    """Tests for the y-grid table."""

    def test_grid(self, five_level_f):
        curve = ratio_curve(five_level_f, 64)
        assert isinstance(curve, pd.DataFrame)
        assert list(curve.columns) == ["y", "r1", "r2"]
        assert len(curve) == 64
        assert curve["y"].iloc[0] == 0.0
        assert curve["y"].iloc[-1] == Y_STAR

    def test_last_row_is_y_star_values(self, five_level_f):
        curve = ratio_curve(five_level_f, 16)
        assert curve["r1"].iloc[-1] == r1(five_level_f, Y_STAR)
        assert curve["r2"].iloc[-1] == r2(five_level_f, Y_STAR)

    def test_rejects_single_point(self, five_level_f):
        with pytest.raises(ValueError):
            ratio_curve(five_level_f, 1)
