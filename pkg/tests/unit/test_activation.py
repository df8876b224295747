"""Unit tests for piecewise constant activation functions."""

import pytest

from stochmatch.domain.activation import (
    PiecewiseConstantF,
    msm_activation,
    five_level_activation,
)


class TestPiecewiseConstantF:
    """Tests for PiecewiseConstantF."""

    def test_values_out_of_range(self):
        """Values must lie in [0, 2]."""
        with pytest.raises(ValueError, match="outside"):
            PiecewiseConstantF((0.5, 2.5))
        with pytest.raises(ValueError):
            PiecewiseConstantF((-0.1,))
        with pytest.raises(ValueError):
            PiecewiseConstantF(())

    def test_non_monotone_is_reported_not_rejected(self):
        f = PiecewiseConstantF((1.0, 0.5))
        assert not f.is_monotone
        assert PiecewiseConstantF((0.5, 0.5, 1.0)).is_monotone

    def test_interval_convention(self):
        """f(t) = f_k on ((k-1)/m, k/m], f(0) = f_1."""
        f = PiecewiseConstantF((0.0, 1.0, 2.0, 2.0))
        assert f.value_at(0.0) == 0.0
        assert f.value_at(0.25) == 0.0
        assert f.value_at(0.26) == 1.0
        assert f.value_at(0.5) == 1.0
        assert f.value_at(1.0) == 2.0

    def test_breakpoint_rounding(self):
        """Times within rounding of k/m take interval k."""
        g = PiecewiseConstantF(tuple(k / 10 for k in range(10)))
        assert g.interval_of(0.3) == 3
        assert g.interval_of(0.1 + 0.2) == 3
        assert g.interval_of(0.7) == 7

    def test_constant_F(self):
        f = PiecewiseConstantF.constant(1.0, 4)
        assert f.F(0.0) == 0.0
        assert f.F(0.3) == pytest.approx(0.3)
        assert f.F(1.0) == pytest.approx(1.0)
        assert f.total == pytest.approx(1.0)

    def test_k_star(self):
        """k* is the last interval with f <= 1."""
        assert PiecewiseConstantF((0.0, 1.0, 1.5)).k_star == 2
        assert PiecewiseConstantF((1.5, 2.0)).k_star == 0
        assert PiecewiseConstantF((1.5, 2.0)).t_star == 0.0
        assert PiecewiseConstantF.constant(1.0, 5).t_star == 1.0

    def test_refine_preserves_F(self):
        f = five_level_activation()
        g = f.refine(3)
        assert g.m == 120
        for t in (0.0, 0.1, 0.33, 0.675, 0.9, 1.0):
            assert g.F(t) == pytest.approx(f.F(t), abs=1e-12)

    def test_refine_rejects_zero(self):
        with pytest.raises(ValueError):
            PiecewiseConstantF.constant(1.0).refine(0)

    def test_to_dict(self):
        assert PiecewiseConstantF((0.0, 2.0)).to_dict() == {"m": 2, "values": [0.0, 2.0]}


class TestFiveLevelActivation:
    """The five-level step function on 40 intervals."""

    def test_levels(self, five_level_f):
        assert five_level_f.m == 40
        assert five_level_f.values[:3] == (0.0, 0.0, 0.4)
        assert five_level_f.values[27] == 1.2
        assert set(five_level_f.values[28:]) == {2.0}
        assert five_level_f.is_monotone

    def test_F1(self, five_level_f):
        """F(1) = 1.24."""
        assert five_level_f.total == pytest.approx(1.24, abs=1e-12)

    def test_t_star(self, five_level_f):
        assert five_level_f.k_star == 27
        assert five_level_f.t_star == pytest.approx(0.675)
        assert five_level_f.cumulative[five_level_f.k_star] == pytest.approx(0.61, abs=1e-12)

    def test_F_at_0_3(self, five_level_f):
        assert five_level_f.F(0.3) == pytest.approx(0.235, abs=1e-12)

    def test_matches_shipped_file(self, five_level_f, shipped_five_level_f):
        assert shipped_five_level_f == five_level_f


class TestOtherActivations:
    """Preset and repaired activation functions."""

    def test_msm(self):
        f = msm_activation()
        assert f.m == 20
        assert f.values[0] == 0.0
        assert f.values[1] == 1.0
        assert f.values[14] == 1.0
        assert f.values[15] == 2.0

    def test_from_callable_rejects_m(self):
        with pytest.raises(ValueError):
            PiecewiseConstantF.from_callable(0, lambda t: 1.0)
