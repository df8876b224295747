"""Empirical competitive-ratio certificates and comparison with analytic bounds."""

from dataclasses import dataclass
from typing import Dict, Tuple

import pandas as pd

from stochmatch.domain.activation import PiecewiseConstantF
from stochmatch.domain.kernel import KernelInstance, VertexClass
from stochmatch.montecarlo.report import EstimateReport
from stochmatch.ratiocalc.bounds import edge_bound


@dataclass(frozen=True)
class RatioEstimate:
    """min over edges with x_ij > 0 of p_ij / x_ij, with the argmin edge.

    Attributes:
        ratio: Empirical certificate alpha-hat
        se: Standard error of the ratio at the argmin edge
        edge: Edge attaining the minimum
        per_edge: (ratio, se) for every edge with x_ij > 0
    """
    ratio: float
    se: float
    edge: Tuple[str, str]
    per_edge: Dict[Tuple[str, str], Tuple[float, float]]

    def lower(self, sigmas: float = 3.0) -> float:
        return self.ratio - sigmas * self.se

    def to_dict(self) -> Dict[str, object]:
        return {
            "ratio": self.ratio,
            "se": self.se,
            "edge": {"i": self.edge[0], "j": self.edge[1]},
        }


def ratio_report(kernel: KernelInstance, report: EstimateReport) -> RatioEstimate:
    """Empirical certificate alpha-hat over the kernel's edges.

    Raises:
        ValueError: If the report misses an edge or every x_ij is 0
    """
    covered = set(report.edge_keys)
    missing = [e.key for e in kernel.instance.edges if e.key not in covered]
    if missing:
        raise ValueError(f"report does not cover edges {missing}")

    per_edge: Dict[Tuple[str, str], Tuple[float, float]] = {}
    for e in kernel.instance.edges:
        xij = kernel.x.value(*e.key)
        if xij <= 0.0:
            continue
        p, se = report.edge_probability(*e.key)
        per_edge[e.key] = (p / xij, se / xij)

    if not per_edge:
        raise ValueError("no edge with x_ij > 0; ratio undefined")

    order = {key: k for k, key in enumerate(report.edge_keys)}
    edge = min(per_edge, key=lambda key: (per_edge[key][0], order[key]))
    ratio, se = per_edge[edge]
    return RatioEstimate(ratio=ratio, se=se, edge=edge, per_edge=per_edge)


def compare_with_bounds(
    kernel: KernelInstance,
    report: EstimateReport,
    f: PiecewiseConstantF,
) -> pd.DataFrame:
    """Every simulated edge next to its analytic lower bound.

    The matching probability is normalized by lambda_i for first-class
    edges and by lambda_i / 2 for second-class edges, then compared with
    r1(y_j) or r2(y_j).

    Returns:
        DataFrame with columns i, j, class, y_j, normalized, se, bound, slack
    """
    rows = []
    for e in kernel.instance.edges:
        cls = kernel.classes[e.online]
        rate = kernel.instance.online_type(e.online).rate
        scale = rate if cls is VertexClass.FIRST else rate / 2.0
        p, se = report.edge_probability(*e.key)
        y = kernel.y[e.offline]
        bound = edge_bound(f, y, cls)
        normalized = p / scale
        rows.append({
            "i": e.online,
            "j": e.offline,
            "class": cls.value,
            "y_j": y,
            "normalized": normalized,
            "se": se / scale,
            "bound": bound,
            "slack": normalized - bound,
        })
    return pd.DataFrame(
        rows, columns=["i", "j", "class", "y_j", "normalized", "se", "bound", "slack"]
    )
