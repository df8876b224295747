"""Fractional solution x over the edges of an instance."""

from dataclasses import dataclass, field
from typing import List, Mapping, Tuple

from stochmatch.domain.instance import Instance

EdgeKey = Tuple[str, str]


@dataclass(frozen=True, eq=False)
class FractionalSolution:
    """LP values x_ij keyed by (online id, offline id).

    Attributes:
        values: Mapping from edge key to x_ij
    """
    values: Mapping[EdgeKey, float] = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "values", dict(self.values))

    @classmethod
    def zeros(cls, inst: Instance) -> "FractionalSolution":
        return cls({e.key: 0.0 for e in inst.edges})

    def value(self, online_id: str, offline_id: str) -> float:
        return self.values[(online_id, offline_id)]

    def x_i(self, online_id: str) -> float:
        """Sum of x_ij over the neighbors of online type i."""
        return sum(v for (i, _), v in self.values.items() if i == online_id)

    def x_j(self, offline_id: str) -> float:
        """Sum of x_ij over the neighbors of offline vertex j."""
        return sum(v for (_, j), v in self.values.items() if j == offline_id)

    def missing_edges(self, inst: Instance) -> List[EdgeKey]:
        return [e.key for e in inst.edges if e.key not in self.values]

    def objective(self, inst: Instance) -> float:
        return sum(e.weight * self.values.get(e.key, 0.0) for e in inst.edges)

    def violations(self, inst: Instance, tol: float) -> List[str]:
        """Bound violations (x_ij >= 0, x_i <= lambda_i, x_j <= 1) beyond ``tol``."""
        problems: List[str] = []
        for key in self.missing_edges(inst):
            problems.append(f"missing variable for edge {key}")
        for key in self.values:
            if key not in inst.edge_index:
                problems.append(f"value for unknown edge {key}")
        for key, v in self.values.items():
            if v < -tol:
                problems.append(f"negative value: x{key} = {v}")
        for t in inst.online_types:
            xi = self.x_i(t.id)
            if xi > t.rate + tol:
                problems.append(f"x_i exceeds rate: type {t.id!r} has x_i = {xi} > {t.rate}")
        for j in inst.offline_vertices:
            xj = self.x_j(j)
            if xj > 1.0 + tol:
                problems.append(f"x_j exceeds 1: vertex {j!r} has x_j = {xj}")
        return problems

    def __repr__(self) -> str:
        return f"FractionalSolution({len(self.values)} edges)"
