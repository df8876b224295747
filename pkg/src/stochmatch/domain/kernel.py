"""Kernel instances: first/second-class online types with x_j = 1 everywhere."""

import logging
from dataclasses import dataclass
from enum import Enum
from typing import Dict, List, Tuple

from stochmatch.config import Y_STAR, config
from stochmatch.domain.instance import Instance, InstanceError, validate_instance
from stochmatch.domain.solution import FractionalSolution

logger = logging.getLogger(__name__)


class KernelError(ValueError):
    """Raised when (instance, x) violates a kernel condition.

    Attributes:
        condition: Short name of the first violated condition
    """

    def __init__(self, condition: str, detail: str):
        super().__init__(f"{condition}: {detail}")
        self.condition = condition
        self.detail = detail


class VertexClass(str, Enum):
    FIRST = "first"
    SECOND = "second"


@dataclass(frozen=True, eq=False)
class KernelInstance:
    """A validated kernel instance with class labels, y_j and competitor rates.

    Attributes:
        instance: Underlying bipartite instance
        x: Fractional solution the classes are derived from
        classes: Class label per online type id
        y: Total first-class neighbor rate per offline vertex
        n1: First-class neighbor types per offline vertex
        n2: Second-class neighbor types per offline vertex
        competitor_map: (j_k, c_k) pairs per offline vertex, offline input order
    """
    instance: Instance
    x: FractionalSolution
    classes: Dict[str, VertexClass]
    y: Dict[str, float]
    n1: Dict[str, Tuple[str, ...]]
    n2: Dict[str, Tuple[str, ...]]
    competitor_map: Dict[str, Tuple[Tuple[str, float], ...]]

    def is_first_class(self, type_id: str) -> bool:
        try:
            return self.classes[type_id] is VertexClass.FIRST
        except KeyError:
            raise InstanceError(f"Unknown online type: {type_id!r}")

    def neighbors(self, type_id: str) -> Tuple[str, ...]:
        return self.instance.online_type(type_id).neighbors

    def competitors(self, offline_id: str) -> List[Tuple[str, float]]:
        self.instance.require_offline(offline_id)
        return list(self.competitor_map[offline_id])

    def competitor_pairs(self) -> List[Tuple[str, str]]:
        """Unordered competitor pairs (j, j') with j before j' in input order."""
        order = self.instance.offline_index
        pairs = []
        for j in self.instance.offline_vertices:
            for other, _ in self.competitor_map[j]:
                if order[other] > order[j]:
                    pairs.append((j, other))
        return pairs

    def __repr__(self) -> str:
        first = sum(1 for c in self.classes.values() if c is VertexClass.FIRST)
        return (
            f"KernelInstance({first} first-class, {len(self.classes) - first} "
            f"second-class, {len(self.y)} offline)"
        )


def classify_kernel(
    inst: Instance,
    x: FractionalSolution,
    tol: float = config.tolerances.kernel,
    enforce_excess: bool = True,
) -> KernelInstance:
    """Classify online types and verify every kernel condition.

    Args:
        inst: Validated instance
        x: Fractional solution on the edges of ``inst``
        tol: Absolute tolerance for every equality check
        enforce_excess: Reject y_j > 1 - ln 2. Disable only to simulate
            instances outside the LP polytope, such as a lone saturated edge

    Returns:
        KernelInstance with classes, y_j, N1/N2 and competitors

    Raises:
        KernelError: On the first violated condition, checked in the order
            degree / x-lambda relation, x_j = 1, y_j <= 1 - ln 2
    """
    report = validate_instance(inst)
    if not report.ok:
        raise KernelError("invalid instance", "; ".join(report.violations))

    missing = x.missing_edges(inst)
    if missing:
        raise KernelError("missing x", f"no value for edges {missing}")

    classes: Dict[str, VertexClass] = {}
    for t in inst.online_types:
        if t.degree == 1:
            value = x.value(t.id, t.neighbors[0])
            if abs(value - t.rate) > tol:
                raise KernelError(
                    "x/λ relation",
                    f"first-class type {t.id!r} has x = {value}, expected λ = {t.rate}",
                )
            classes[t.id] = VertexClass.FIRST
        elif t.degree == 2:
            for j in t.neighbors:
                value = x.value(t.id, j)
                if abs(value - t.rate / 2.0) > tol:
                    raise KernelError(
                        "x/λ relation",
                        f"second-class type {t.id!r} has x = {value} on {j!r}, "
                        f"expected λ/2 = {t.rate / 2.0}",
                    )
            classes[t.id] = VertexClass.SECOND
        else:
            raise KernelError(
                "degree", f"type {t.id!r} has {t.degree} neighbors, expected 1 or 2"
            )

    for j in inst.offline_vertices:
        xj = x.x_j(j)
        if abs(xj - 1.0) > tol:
            raise KernelError("x_j ≠ 1", f"vertex {j!r} has x_j = {xj}")

    n1: Dict[str, List[str]] = {j: [] for j in inst.offline_vertices}
    n2: Dict[str, List[str]] = {j: [] for j in inst.offline_vertices}
    for t in inst.online_types:
        target = n1 if classes[t.id] is VertexClass.FIRST else n2
        for j in t.neighbors:
            target[j].append(t.id)

    y = {j: sum(x.value(i, j) for i in n1[j]) for j in inst.offline_vertices}
    for j, yj in y.items():
        if enforce_excess and yj > Y_STAR + tol:
            raise KernelError("y_j > 1 − ln 2", f"vertex {j!r} has y_j = {yj} > {Y_STAR}")

    competitor_map: Dict[str, Tuple[Tuple[str, float], ...]] = {}
    for j in inst.offline_vertices:
        rates: Dict[str, float] = {}
        for i in n2[j]:
            t = inst.online_type(i)
            other = t.neighbors[1] if t.neighbors[0] == j else t.neighbors[0]
            rates[other] = rates.get(other, 0.0) + t.rate / 2.0
        ordered = sorted(rates.items(), key=lambda kv: inst.offline_index[kv[0]])
        competitor_map[j] = tuple(ordered)

        # Follows from x_j = 1 and the class relations.
        total = sum(c for _, c in ordered)
        if abs(total - (1.0 - y[j])) > tol:
            raise KernelError(
                "competitor rates", f"vertex {j!r}: sum c_k = {total} != 1 - y_j = {1.0 - y[j]}"
            )

    logger.debug(f"Kernel accepted: {len(classes)} types, {len(y)} offline vertices")

    return KernelInstance(
        instance=inst,
        x=x,
        classes=classes,
        y=y,
        n1={j: tuple(v) for j, v in n1.items()},
        n2={j: tuple(v) for j, v in n2.items()},
        competitor_map=competitor_map,
    )


def competitors(kernel: KernelInstance, offline_id: str) -> List[Tuple[str, float]]:
    """Competitor set C(j) with rates c_k.

    Raises:
        InstanceError: If ``offline_id`` is unknown
    """
    return kernel.competitors(offline_id)
