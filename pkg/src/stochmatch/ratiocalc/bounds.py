"""Analytic bounds on Pr[U_j(t) = 1] and per-class edge bounds."""

import math
from typing import Iterable

import numpy as np
import pandas as pd

from stochmatch.config import config
from stochmatch.domain.activation import PiecewiseConstantF
from stochmatch.domain.kernel import VertexClass
from stochmatch.ratiocalc.ratio import r1, r2, z_of


def proposal_pressure(f: PiecewiseConstantF, y: float, t: float) -> float:
    """Rate at which proposals reach an unmatched j at time t: y + (1 - y) f(t)."""
    return y + (1.0 - y) * f.value_at(t)


def loose_bound(f: PiecewiseConstantF, y: float, t: float) -> float:
    """exp(-y t - (1 - y) F(t)); an equality for t <= t*, a lower bound after."""
    return math.exp(-y * t - (1.0 - y) * f.F(t))


def improved_bound(f: PiecewiseConstantF, y: float, t: float) -> float:
    """exp(-y t - (1 - y) z(t)) for t >= t*.

    Raises:
        ValueError: If t < t*, or F(1) < 1 where the bound is not valid
    """
    if f.total < 1.0 - config.tolerances.certificate:
        raise ValueError(f"improved bound needs F(1) >= 1, got F(1) = {f.total}")
    return math.exp(-y * t - (1.0 - y) * z_of(f, t))


def joint_bound(f: PiecewiseConstantF, y: float, t: float) -> float:
    """Upper bound on Pr[U_j(t) = 1, U_j'(t) = 1] for a competitor j' and t >= t*.

    Raises:
        ValueError: If t < t*
    """
    if t < f.t_star:
        raise ValueError(f"joint bound is defined on [t*, 1] = [{f.t_star}, 1], got t = {t}")
    f_star = f.cumulative[f.k_star]
    return math.exp(-y * f.t_star - (2.0 - y) * f_star - 2.0 * (t - f.t_star))


def unmatched_bound(f: PiecewiseConstantF, y: float, t: float) -> float:
    """Best available lower bound on Pr[U_j(t) = 1]."""
    if t <= f.t_star or f.total < 1.0 - config.tolerances.certificate:
        return loose_bound(f, y, t)
    return max(loose_bound(f, y, t), improved_bound(f, y, t))


def edge_bound(f: PiecewiseConstantF, y: float, edge_class: VertexClass) -> float:
    """r1(y) for first-class edges, r2(y) for second-class edges."""
    if edge_class is VertexClass.FIRST:
        return r1(f, y)
    return r2(f, y)


def bound_curve(f: PiecewiseConstantF, y: float, grid: Iterable[float]) -> pd.DataFrame:
    """Bounds on a time grid; improved and joint are NaN before t* (and improved when F(1) < 1)."""
    rows = []
    valid_improved = f.total >= 1.0 - config.tolerances.certificate
    for t in grid:
        after = t >= f.t_star
        rows.append({
            "t": float(t),
            "loose": loose_bound(f, y, t),
            "improved": improved_bound(f, y, t) if after and valid_improved else np.nan,
            "joint": joint_bound(f, y, t) if after else np.nan,
        })
    return pd.DataFrame(rows, columns=["t", "loose", "improved", "joint"])
