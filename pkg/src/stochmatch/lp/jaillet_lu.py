"""The Jaillet-Lu LP with auxiliary excess variables.

Variables are x_e for every edge followed by z_e for every edge. Rows, all in
``A_ub @ v <= b_ub`` form and in this order:

    sum_j x_ij <= lambda_i              one per online type
    sum_i x_ij <= 1                     one per offline vertex
    2 x_ij - z_ij <= lambda_i           one per edge
    -z_ij <= 0                          one per edge
    sum_i z_ij <= 1 - ln 2              one per offline vertex
"""

import logging
from dataclasses import dataclass, field
from typing import Dict, List, Tuple

import numpy as np
from scipy.optimize import linprog

from stochmatch.config import Y_STAR, config
from stochmatch.domain.instance import Instance
from stochmatch.domain.solution import FractionalSolution

logger = logging.getLogger(__name__)


class LpError(ValueError):
    """Raised when the LP cannot be solved or a solution is malformed."""


@dataclass(frozen=True, eq=False)
class JlLinearProgram:
    """Dense LP data ready for :func:`scipy.optimize.linprog` (minimization form).

    Attributes:
        instance: Instance the LP was built from
        edge_keys: (i, j) per x variable, in edge input order
        c: Objective coefficients (negated weights on x, zero on z)
        A_ub: Constraint matrix
        b_ub: Right-hand sides
        bounds: Finite (low, high) per variable
        families: Row range per constraint family
    """
    instance: Instance
    edge_keys: Tuple[Tuple[str, str], ...]
    c: np.ndarray
    A_ub: np.ndarray
    b_ub: np.ndarray
    bounds: Tuple[Tuple[float, float], ...]
    families: Dict[str, Tuple[int, int]] = field(default_factory=dict)

    @property
    def n_x(self) -> int:
        return len(self.edge_keys)

    @property
    def n_z(self) -> int:
        return len(self.edge_keys)

    @property
    def n_rows(self) -> int:
        return self.A_ub.shape[0]

    def rows(self, family: str) -> np.ndarray:
        start, stop = self.families[family]
        return self.A_ub[start:stop]

    def __repr__(self) -> str:
        return f"JlLinearProgram({self.n_x} x-vars, {self.n_z} z-vars, {self.n_rows} rows)"


@dataclass(frozen=True)
class LpSolution:
    """Optimal x with its objective and the auxiliary z values."""
    x: FractionalSolution
    objective: float
    z: Dict[Tuple[str, str], float]
    message: str = ""


@dataclass(frozen=True)
class FeasibilityReport:
    """Largest violation per constraint family; 0.0 means satisfied."""
    residuals: Dict[str, float]
    tol: float

    @property
    def ok(self) -> bool:
        return all(r <= self.tol for r in self.residuals.values())

    @property
    def violated(self) -> List[str]:
        return [name for name, r in self.residuals.items() if r > self.tol]

    def to_dict(self) -> Dict[str, object]:
        return {"ok": self.ok, "tol": self.tol, "residuals": dict(self.residuals)}


def build_jl_lp(inst: Instance) -> JlLinearProgram:
    """Build the LP for a validated instance.

    Args:
        inst: Instance whose edges become x and z variables

    Returns:
        JlLinearProgram with |I| + |J| + 2|E| + |J| rows
    """
    edges = inst.edges
    n_edges = len(edges)
    n_types = len(inst.online_types)
    n_offline = len(inst.offline_vertices)
    n_vars = 2 * n_edges
    n_rows = n_types + 2 * n_offline + 2 * n_edges

    A = np.zeros((n_rows, n_vars))
    b = np.zeros(n_rows)
    rates = {t.id: t.rate for t in inst.online_types}

    row = 0
    families: Dict[str, Tuple[int, int]] = {}

    start = row
    for t in inst.online_types:
        for k, e in enumerate(edges):
            if e.online == t.id:
                A[row, k] = 1.0
        b[row] = t.rate
        row += 1
    families["online_rate"] = (start, row)

    start = row
    for j in inst.offline_vertices:
        for k, e in enumerate(edges):
            if e.offline == j:
                A[row, k] = 1.0
        b[row] = 1.0
        row += 1
    families["offline_capacity"] = (start, row)

    start = row
    for k, e in enumerate(edges):
        A[row, k] = 2.0
        A[row, n_edges + k] = -1.0
        b[row] = rates[e.online]
        row += 1
    families["excess_lower"] = (start, row)

    start = row
    for k in range(n_edges):
        A[row, n_edges + k] = -1.0
        row += 1
    families["excess_nonnegative"] = (start, row)

    start = row
    for j in inst.offline_vertices:
        for k, e in enumerate(edges):
            if e.offline == j:
                A[row, n_edges + k] = 1.0
        b[row] = Y_STAR
        row += 1
    families["excess_cap"] = (start, row)

    c = np.concatenate([-np.array([e.weight for e in edges], dtype=float), np.zeros(n_edges)])
    bounds = tuple((0.0, rates[e.online]) for e in edges) + tuple((0.0, 1.0) for _ in edges)

    lp = JlLinearProgram(
        instance=inst,
        edge_keys=tuple(e.key for e in edges),
        c=c,
        A_ub=A,
        b_ub=b,
        bounds=bounds,
        families=families,
    )
    logger.debug(f"Built {lp!r}")
    return lp


def solve_jl_lp(lp: JlLinearProgram, tol: float = config.tolerances.lp) -> LpSolution:
    """Solve the LP with HiGHS.

    Args:
        lp: LP from :func:`build_jl_lp`
        tol: Feasibility tolerance passed to the solver and used for the final check

    Returns:
        LpSolution with the optimal x and objective

    Raises:
        LpError: If the solver reports failure or its output fails the feasibility check
    """
    if lp.n_x == 0:
        return LpSolution(x=FractionalSolution({}), objective=0.0, z={}, message="empty LP")

    logger.info(f"Solving {lp!r}")
    result = linprog(
        lp.c,
        A_ub=lp.A_ub,
        b_ub=lp.b_ub,
        bounds=list(lp.bounds),
        method="highs",
        options={
            "primal_feasibility_tolerance": tol,
            "dual_feasibility_tolerance": tol,
        },
    )
    if result.status != 0:
        raise LpError(f"LP solve failed (status {result.status}): {result.message}")

    n = lp.n_x
    x_values = np.clip(result.x[:n], 0.0, None)
    z_values = np.clip(result.x[n:], 0.0, None)
    x = FractionalSolution({key: float(v) for key, v in zip(lp.edge_keys, x_values)})
    z = {key: float(v) for key, v in zip(lp.edge_keys, z_values)}
    objective = x.objective(lp.instance)

    report = check_feasibility(lp.instance, x, tol)
    if not report.ok:
        raise LpError(f"Solver output violates {report.violated}: {report.residuals}")

    logger.info(f"LP optimum {objective:.9f}")
    return LpSolution(x=x, objective=objective, z=z, message=str(result.message))


def check_feasibility(inst: Instance, x: FractionalSolution, tol: float = config.tolerances.lp) -> FeasibilityReport:
    """Maximum residual per constraint family of the LP in its original form.

    Raises:
        LpError: If x has no value for some edge
    """
    missing = x.missing_edges(inst)
    if missing:
        raise LpError(f"missing variable for edges {missing}")

    values = [x.value(*e.key) for e in inst.edges]
    nonnegativity = max([-v for v in values], default=0.0)

    online = max((x.x_i(t.id) - t.rate for t in inst.online_types), default=0.0)
    offline = max((x.x_j(j) - 1.0 for j in inst.offline_vertices), default=0.0)

    rates = {t.id: t.rate for t in inst.online_types}
    excess: Dict[str, float] = {j: 0.0 for j in inst.offline_vertices}
    for e, v in zip(inst.edges, values):
        excess[e.offline] += max(2.0 * v - rates[e.online], 0.0)
    excess_residual = max((s - Y_STAR for s in excess.values()), default=0.0)

    residuals = {
        "nonnegativity": max(nonnegativity, 0.0),
        "online_rate": max(online, 0.0),
        "offline_capacity": max(offline, 0.0),
        "excess": max(excess_residual, 0.0),
    }
    return FeasibilityReport(residuals=residuals, tol=tol)
