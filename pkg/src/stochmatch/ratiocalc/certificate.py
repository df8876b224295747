"""Full certificate for an activation function: values, flags and y-grid spot check."""

import logging
from dataclasses import dataclass, field
from typing import Dict, Optional, Tuple

import numpy as np
import pandas as pd

from stochmatch.config import Y_STAR, config
from stochmatch.constraints import (
    DerivativeConstraint,
    MassConstraint,
    MonotoneConstraint,
    RangeConstraint,
)
from stochmatch.domain.activation import PiecewiseConstantF
from stochmatch.ratiocalc.ratio import (
    cons1,
    cons1_conservative,
    cons2,
    cons2_conservative,
    r1,
    r2,
)

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class RatioReport:
    """Analytic certificate for one activation function.

    ``certified`` is min{r1(y*), r2(y*)} when every flag passes, else None.
    The conservative cons values use endpoint-bounded weights and are
    reported alongside the exact ones.
    """
    m: int
    r1: float
    r2: float
    ratio: float
    cons1: float
    cons2: float
    cons1_conservative: float
    cons2_conservative: float
    F1: float
    t_star: float
    mass_ok: bool
    cons1_ok: bool
    cons2_ok: bool
    monotone: bool
    y_grid_ok: bool
    y_grid_min: Tuple[float, float]
    certified: Optional[float]
    violations: Tuple[str, ...] = field(default_factory=tuple)

    @property
    def flags(self) -> Dict[str, bool]:
        return {
            "mass": self.mass_ok,
            "cons1": self.cons1_ok,
            "cons2": self.cons2_ok,
            "monotone": self.monotone,
            "y_grid": self.y_grid_ok,
        }

    @property
    def is_certified(self) -> bool:
        return self.certified is not None

    def to_dict(self) -> Dict[str, object]:
        return {
            "m": self.m,
            "r1": self.r1,
            "r2": self.r2,
            "min": self.ratio,
            "cons1": self.cons1,
            "cons2": self.cons2,
            "cons1_conservative": self.cons1_conservative,
            "cons2_conservative": self.cons2_conservative,
            "F1": self.F1,
            "t_star": self.t_star,
            "flags": self.flags,
            "y_grid_min": {"r1": self.y_grid_min[0], "r2": self.y_grid_min[1]},
            "certified": self.certified,
            "violations": list(self.violations),
        }


def ratio_curve(f: PiecewiseConstantF, points: int = config.cli.y_grid_points) -> pd.DataFrame:
    """r1 and r2 on an equispaced grid over [0, y*]."""
    if points < 2:
        raise ValueError(f"points must be >= 2, got {points}")
    ys = np.linspace(0.0, Y_STAR, points)
    ys[-1] = Y_STAR
    return pd.DataFrame({
        "y": ys,
        "r1": [r1(f, y) for y in ys],
        "r2": [r2(f, y) for y in ys],
    })


def check_all(
    f: PiecewiseConstantF,
    y_grid_points: int = config.cli.y_grid_points,
    tol: float = config.tolerances.certificate,
) -> RatioReport:
    """Evaluate every analytic quantity and flag for ``f``.

    Args:
        f: Non-decreasing activation function with values in [0, 2]
        y_grid_points: Size of the [0, y*] grid for the minimum spot check
        tol: Slack allowed on F(1) >= 1 and cons <= 0

    Returns:
        RatioReport with values, flags and the certified ratio

    Raises:
        ValueError: If f is not non-decreasing
    """
    monotone = MonotoneConstraint()
    problem = monotone.violation(f)
    if problem is not None:
        raise ValueError(problem)

    constraints = [
        RangeConstraint(),
        MassConstraint(tol=tol),
        DerivativeConstraint("cons1", tol=tol),
        DerivativeConstraint("cons2", tol=tol),
    ]
    violations = [v for v in (c.violation(f) for c in constraints) if v is not None]

    r1_star = r1(f, Y_STAR)
    r2_star = r2(f, Y_STAR)
    c1 = cons1(f)
    c2 = cons2(f)

    curve = ratio_curve(f, y_grid_points)
    grid_min = (float(curve["r1"].min()), float(curve["r2"].min()))
    y_tol = config.tolerances.y_grid
    y_grid_ok = grid_min[0] >= r1_star - y_tol and grid_min[1] >= r2_star - y_tol
    if not y_grid_ok:
        violations.append(
            f"y-grid minimum not at y*: min r1 = {grid_min[0]:.12g} vs r1(y*) = {r1_star:.12g}, "
            f"min r2 = {grid_min[1]:.12g} vs r2(y*) = {r2_star:.12g}"
        )

    mass_ok = f.total >= 1.0 - tol
    cons1_ok = c1 <= tol
    cons2_ok = c2 <= tol
    ratio = min(r1_star, r2_star)
    passed = mass_ok and cons1_ok and cons2_ok and y_grid_ok
    certified = ratio if passed else None

    logger.debug(
        f"check_all {f!r}: r1={r1_star:.6f} r2={r2_star:.6f} cons1={c1:.3e} "
        f"cons2={c2:.3e} certified={certified}"
    )

    return RatioReport(
        m=f.m,
        r1=r1_star,
        r2=r2_star,
        ratio=ratio,
        cons1=c1,
        cons2=c2,
        cons1_conservative=cons1_conservative(f),
        cons2_conservative=cons2_conservative(f),
        F1=f.total,
        t_star=f.t_star,
        mass_ok=mass_ok,
        cons1_ok=cons1_ok,
        cons2_ok=cons2_ok,
        monotone=True,
        y_grid_ok=y_grid_ok,
        y_grid_min=grid_min,
        certified=certified,
        violations=tuple(violations),
    )
