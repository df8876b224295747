"""Bipartite instance model with online-type arrival rates and edge weights."""

import math
from dataclasses import dataclass, field
from functools import cached_property
from typing import Dict, List, Tuple


class InstanceError(ValueError):
    """Raised when an instance is structurally invalid or a vertex is unknown."""


@dataclass(frozen=True)
class OnlineType:
    """An online vertex type arriving as a Poisson process with rate ``rate``."""
    id: str
    rate: float
    neighbors: Tuple[str, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "neighbors", tuple(self.neighbors))

    @property
    def degree(self) -> int:
        return len(self.neighbors)


@dataclass(frozen=True)
class Edge:
    """A weighted edge between an online type and an offline vertex."""
    online: str
    offline: str
    weight: float = 1.0

    @property
    def key(self) -> Tuple[str, str]:
        return (self.online, self.offline)


@dataclass(frozen=True)
class Instance:
    """Bipartite graph G = (I u J, E) with rates lambda_i and weights w_ij.

    Construction never rejects; structural checks live in
    :func:`validate_instance` so that every problem can be reported at once.
    Internal indices follow input order.
    """
    online_types: Tuple[OnlineType, ...]
    offline_vertices: Tuple[str, ...]
    edges: Tuple[Edge, ...]

    def __post_init__(self):
        object.__setattr__(self, "online_types", tuple(self.online_types))
        object.__setattr__(self, "offline_vertices", tuple(self.offline_vertices))
        object.__setattr__(self, "edges", tuple(self.edges))

    @property
    def total_rate(self) -> float:
        """Lambda = sum of all arrival rates."""
        return sum(t.rate for t in self.online_types)

    @cached_property
    def type_index(self) -> Dict[str, int]:
        return {t.id: k for k, t in enumerate(self.online_types)}

    @cached_property
    def offline_index(self) -> Dict[str, int]:
        return {j: k for k, j in enumerate(self.offline_vertices)}

    @cached_property
    def edge_index(self) -> Dict[Tuple[str, str], int]:
        return {e.key: k for k, e in enumerate(self.edges)}

    def online_type(self, type_id: str) -> OnlineType:
        """Look up an online type by id.

        Raises:
            InstanceError: If the id is unknown
        """
        try:
            return self.online_types[self.type_index[type_id]]
        except KeyError:
            raise InstanceError(f"Unknown online type: {type_id!r}")

    def require_offline(self, offline_id: str) -> None:
        if offline_id not in self.offline_index:
            raise InstanceError(f"Unknown offline vertex: {offline_id!r}")

    def edges_at(self, offline_id: str) -> List[Edge]:
        """Edges incident to an offline vertex, in input order."""
        return [e for e in self.edges if e.offline == offline_id]

    def weight(self, online_id: str, offline_id: str) -> float:
        return self.edges[self.edge_index[(online_id, offline_id)]].weight

    def __repr__(self) -> str:
        return (
            f"Instance({len(self.online_types)} online types, "
            f"{len(self.offline_vertices)} offline vertices, "
            f"{len(self.edges)} edges)"
        )


@dataclass(frozen=True)
class ValidationReport:
    """Outcome of :func:`validate_instance`: empty violations means ok."""
    violations: Tuple[str, ...] = field(default_factory=tuple)

    @property
    def ok(self) -> bool:
        return not self.violations

    def raise_if_invalid(self) -> None:
        if self.violations:
            raise InstanceError("; ".join(self.violations))


def validate_instance(inst: Instance) -> ValidationReport:
    """Check every structural invariant of an instance.

    Args:
        inst: Instance to check

    Returns:
        ValidationReport listing each violated invariant
    """
    violations: List[str] = []

    seen_types = set()
    for t in inst.online_types:
        if t.id in seen_types:
            violations.append(f"duplicate vertex: online type {t.id!r}")
        seen_types.add(t.id)
        if not (isinstance(t.rate, (int, float)) and math.isfinite(t.rate)) or t.rate <= 0:
            violations.append(f"nonpositive rate: type {t.id!r} has rate {t.rate}")

    offline = set()
    for j in inst.offline_vertices:
        if j in offline:
            violations.append(f"duplicate vertex: offline {j!r}")
        offline.add(j)

    edge_keys = set()
    for e in inst.edges:
        if e.online not in seen_types or e.offline not in offline:
            violations.append(
                f"dangling edge: ({e.online!r}, {e.offline!r}) references an unknown vertex"
            )
        if e.key in edge_keys:
            violations.append(f"duplicate edge: ({e.online!r}, {e.offline!r})")
        edge_keys.add(e.key)
        if not math.isfinite(e.weight) or e.weight < 0:
            violations.append(
                f"negative weight: ({e.online!r}, {e.offline!r}) has weight {e.weight}"
            )

    neighbor_keys = set()
    for t in inst.online_types:
        if len(set(t.neighbors)) != len(t.neighbors):
            violations.append(f"duplicate edge: type {t.id!r} lists a neighbor twice")
        neighbor_keys.update((t.id, j) for j in t.neighbors)

    for i, j in sorted(neighbor_keys - edge_keys):
        violations.append(f"neighbor mismatch: ({i!r}, {j!r}) listed as neighbor but has no edge")
    for i, j in sorted(edge_keys - neighbor_keys):
        violations.append(f"neighbor mismatch: edge ({i!r}, {j!r}) missing from neighbor list")

    return ValidationReport(tuple(violations))
