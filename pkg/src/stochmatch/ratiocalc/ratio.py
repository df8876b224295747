"""Per-edge lower bounds r1, r2 and the derivative constraints cons1, cons2.

Every quantity is an integral over [0, 1] of an affine weight times the
exponential of an affine exponent on each interval ((k-1)/m, k/m], so each
is evaluated exactly by :func:`affine_exp_integral`. Before t* the exponent
involves F(t); after t* it involves

    z(t) = e^{-F(1)} F(t*) + (1 - e^{-F(1)}) F(t) + e^{-F(1)} (t - t*).
"""

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence, Union

import numpy as np

from stochmatch.config import Y_STAR
from stochmatch.domain.activation import PiecewiseConstantF
from stochmatch.ratiocalc.integrals import affine_exp_integral

Activation = Union[PiecewiseConstantF, Sequence[float]]


@dataclass(frozen=True, eq=False)
class IntervalProfile:
    """Per-interval arrays shared by every evaluator.

    On interval k the relevant cumulative G is F before t* and z after t*;
    G is affine there with left value ``g_left`` and slope ``g_slope``.
    """
    m: int
    width: float
    starts: np.ndarray
    values: np.ndarray
    f_left: np.ndarray
    g_left: np.ndarray
    g_slope: np.ndarray
    after: np.ndarray
    k_star: int
    t_star: float
    f_star: float
    total: float

    @classmethod
    def from_values(cls, values: Sequence[float]) -> "IntervalProfile":
        v = np.asarray(values, dtype=float)
        m = len(v)
        width = 1.0 / m
        starts = np.arange(m, dtype=float) / m
        f_left = np.concatenate(([0.0], np.cumsum(v)[:-1])) / m
        total = float(np.sum(v)) / m

        at_most_one = np.nonzero(v <= 1.0)[0]
        k_star = int(at_most_one[-1]) + 1 if at_most_one.size else 0
        t_star = k_star / m
        f_star = float(f_left[k_star]) if k_star < m else total

        decay = math.exp(-total)
        z_left = decay * f_star + (1.0 - decay) * f_left + decay * (starts - t_star)
        z_slope = (1.0 - decay) * v + decay

        after = np.arange(1, m + 1) > k_star
        return cls(
            m=m,
            width=width,
            starts=starts,
            values=v,
            f_left=f_left,
            g_left=np.where(after, z_left, f_left),
            g_slope=np.where(after, z_slope, v),
            after=after,
            k_star=k_star,
            t_star=t_star,
            f_star=f_star,
            total=total,
        )

    def exponent(self, y: float):
        """Left value and slope of -y t - (1 - y) G(t) on every interval."""
        c = -y * self.starts - (1.0 - y) * self.g_left
        d = -y - (1.0 - y) * self.g_slope
        return c, d

    def joint_exponent(self, y: float):
        """Left value of -y t* - (2 - y) F(t*) - 2 (t - t*) on post-t* intervals."""
        a = self.starts[self.after]
        return -y * self.t_star - (2.0 - y) * self.f_star - 2.0 * (a - self.t_star)


@lru_cache(maxsize=512)
def _profile_for(values: tuple) -> IntervalProfile:
    return IntervalProfile.from_values(values)


def profile(f: Activation) -> IntervalProfile:
    values = f.values if isinstance(f, PiecewiseConstantF) else tuple(float(v) for v in f)
    return _profile_for(tuple(values))


def z_of(f: PiecewiseConstantF, t: float) -> float:
    """z(t) for t in [t*, 1].

    Raises:
        ValueError: If t < t* or t > 1
    """
    if t < f.t_star or t > 1.0:
        raise ValueError(f"z(t) is defined on [t*, 1] = [{f.t_star}, 1], got t = {t}")
    decay = math.exp(-f.total)
    f_star = f.cumulative[f.k_star]
    return decay * f_star + (1.0 - decay) * f.F(t) + decay * (t - f.t_star)


def r1(f: Activation, y: float) -> float:
    """Lower bound on Pr[M_ij = 1] / lambda_i for a first-class edge at y_j = y."""
    _check_y(y)
    p = profile(f)
    c, d = p.exponent(y)
    return float(np.sum(affine_exp_integral(1.0, 0.0, c, d, p.width)))


def r2(f: Activation, y: float) -> float:
    """Lower bound on Pr[M_ij = 1] / (lambda_i / 2) for a second-class edge at y_j = y."""
    _check_y(y)
    p = profile(f)
    c, d = p.exponent(y)
    main = np.sum(affine_exp_integral(p.values, 0.0, c, d, p.width))
    second_choice = np.sum(
        affine_exp_integral(p.values[p.after] - 1.0, 0.0, p.joint_exponent(y), -2.0, p.width)
    )
    return float(main - second_choice)


def _cons_terms(p: IntervalProfile, weighted: bool):
    """(weight left value, weight slope, exponent left, exponent slope) at y*."""
    c, d = p.exponent(Y_STAR)
    w_left = p.g_left - p.starts
    w_slope = p.g_slope - 1.0
    if weighted:
        w_left = p.values * w_left
        w_slope = p.values * w_slope
    return w_left, w_slope, c, d


def _cons2_tail(p: IntervalProfile) -> float:
    """Second-choice term of cons2; its weight is constant per interval."""
    a = p.starts[p.after]
    weight = (p.values[p.after] - 1.0) * (p.t_star - p.f_star)
    c = -2.0 * p.f_star - 2.0 * (a - p.t_star)
    return float(np.sum(affine_exp_integral(weight, 0.0, c, -2.0, p.width)))


def cons1(f: Activation) -> float:
    """Left-hand side of the r1 derivative constraint; <= 0 puts min r1 at y*."""
    p = profile(f)
    w_left, w_slope, c, d = _cons_terms(p, weighted=False)
    return float(np.sum(affine_exp_integral(w_left, w_slope, c, d, p.width)))


def cons2(f: Activation) -> float:
    """Left-hand side of the r2 derivative constraint; <= 0 puts min r2 at y*."""
    p = profile(f)
    w_left, w_slope, c, d = _cons_terms(p, weighted=True)
    main = float(np.sum(affine_exp_integral(w_left, w_slope, c, d, p.width)))
    return main + _cons2_tail(p)


def _endpoint_bound(w_left: np.ndarray, w_slope: np.ndarray, width: float) -> np.ndarray:
    return np.maximum(w_left, w_left + w_slope * width)


def cons1_conservative(f: Activation) -> float:
    """cons1 with each weight replaced by its maximum endpoint value.

    Never smaller than :func:`cons1`; before t* the maximum sits at the left
    endpoint since F(t) - t is non-increasing there.
    """
    p = profile(f)
    w_left, w_slope, c, d = _cons_terms(p, weighted=False)
    bound = _endpoint_bound(w_left, w_slope, p.width)
    return float(np.sum(affine_exp_integral(bound, 0.0, c, d, p.width)))


def cons2_conservative(f: Activation) -> float:
    """cons2 evaluated with endpoint-bounded weights."""
    p = profile(f)
    w_left, w_slope, c, d = _cons_terms(p, weighted=True)
    bound = _endpoint_bound(w_left, w_slope, p.width)
    main = float(np.sum(affine_exp_integral(bound, 0.0, c, d, p.width)))
    return main + _cons2_tail(p)


def objective(f: Activation) -> float:
    """min{r1(y*), r2(y*)}."""
    return min(r1(f, Y_STAR), r2(f, Y_STAR))


def _check_y(y: float) -> None:
    if not 0.0 <= y <= 1.0:
        raise ValueError(f"y must lie in [0, 1], got {y}")
