"""Unit tests for concrete constraint implementations."""

import pytest

from stochmatch.domain.activation import PiecewiseConstantF
from stochmatch.constraints import (
    DerivativeConstraint,
    MassConstraint,
    MonotoneConstraint,
    RangeConstraint,
    default_activation_constraints,
)
from stochmatch.ratiocalc.ratio import cons1, cons2_conservative


class TestMonotoneConstraint:
    """Test cases for MonotoneConstraint."""

    def test_non_decreasing(self, five_level_f):
        """Test that a non-decreasing function passes."""
        constraint = MonotoneConstraint()
        assert constraint.is_satisfied(five_level_f)
        assert constraint.violation(five_level_f) is None

    def test_decreasing_step(self):
        """Test that the first descent is named in the violation."""
        constraint = MonotoneConstraint()
        f = PiecewiseConstantF((1.0, 0.5, 2.0))

        assert not constraint.is_satisfied(f)
        assert constraint.violation(f) == "f is not non-decreasing: f_1 = 1.0 > f_2 = 0.5"

    def test_partial_ok(self):
        """Test the raw-level pre-check."""
        constraint = MonotoneConstraint()
        assert constraint.partial_ok([0.0, 0.0, 1.5])
        assert not constraint.partial_ok([0.2, 0.1])


class TestRangeConstraint:
    """Test cases for RangeConstraint."""

    def test_default_range(self, five_level_f):
        """Test the [0, 2] default."""
        assert RangeConstraint().is_satisfied(five_level_f)

    def test_narrow_range(self, five_level_f):
        """Test a range that excludes the top level."""
        constraint = RangeConstraint(0.0, 1.5)
        assert not constraint.is_satisfied(five_level_f)
        assert "outside [0.0, 1.5]" in constraint.violation(five_level_f)

    def test_partial_ok_rejects_raw_levels(self):
        """Test that raw levels outside the range fail before construction."""
        assert not RangeConstraint().partial_ok([0.0, 2.5])

    def test_invalid_bounds(self):
        """Test that low > high is rejected."""
        with pytest.raises(ValueError, match="cannot exceed"):
            RangeConstraint(2.0, 1.0)


class TestMassConstraint:
    """Test cases for MassConstraint."""

    def test_exactly_one(self):
        """Test that F(1) = 1 exactly is valid."""
        f = PiecewiseConstantF.constant(1.0, m=5)
        assert MassConstraint().is_satisfied(f)

    def test_below_one(self):
        """Test a function with too little mass."""
        f = PiecewiseConstantF((0.0, 1.0))
        constraint = MassConstraint()

        assert not constraint.is_satisfied(f)
        assert constraint.violation(f) == "F(1) = 0.5 < 1.0"

    def test_partial_ok(self):
        """Test the sum check on raw levels."""
        constraint = MassConstraint()
        assert constraint.partial_ok([0.5, 1.5])
        assert not constraint.partial_ok([0.5, 1.0])

    def test_custom_minimum(self, five_level_f):
        """Test a stricter mass requirement."""
        assert MassConstraint(minimum=1.2).is_satisfied(five_level_f)
        assert not MassConstraint(minimum=1.3).is_satisfied(five_level_f)


class TestDerivativeConstraint:
    """Test cases for DerivativeConstraint."""

    def test_certified_function_passes_both(self, five_level_f):
        """Test that the certified function satisfies cons1 and cons2."""
        for which in ("cons1", "cons2"):
            assert DerivativeConstraint(which).is_satisfied(five_level_f)

    def test_value_dispatch(self, five_level_f):
        """Test that each variant evaluates its own quantity."""
        assert DerivativeConstraint("cons1").value(five_level_f) == cons1(five_level_f)
        conservative = DerivativeConstraint("cons2", conservative=True)
        assert conservative.value(five_level_f) == cons2_conservative(five_level_f)
        assert conservative.name == "cons2_conservative"

    def test_violation_message(self):
        """Test a function whose cons1 is positive.

        With f = 2 from the start z(t) > t, so the weight z(t) - t is positive.
        """
        f = PiecewiseConstantF.constant(2.0, m=4)
        constraint = DerivativeConstraint("cons1")

        assert not constraint.is_satisfied(f)
        assert constraint.violation(f).startswith("cons1 = ")

    def test_unknown_constraint(self):
        """Test that only cons1 and cons2 are accepted."""
        with pytest.raises(ValueError, match="cons1"):
            DerivativeConstraint("cons3")


class TestDefaultConstraints:
    """Test cases for the default constraint list."""

    def test_order_and_names(self):
        """Test that the cheap checks come first."""
        names = [c.name for c in default_activation_constraints()]
        assert names == ["range", "monotone", "mass", "cons1", "cons2"]

    def test_conservative_variant(self):
        """Test that the conservative flag reaches the derivative checks."""
        names = [c.name for c in default_activation_constraints(conservative=True)]
        assert names[-2:] == ["cons1_conservative", "cons2_conservative"]

    def test_certified_function_feasible(self, five_level_f):
        """Test that the certified function satisfies every default constraint."""
        assert all(c.is_satisfied(five_level_f) for c in default_activation_constraints())
