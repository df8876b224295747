"""Evolving Suggested Matching over a realized arrival sequence.

Engines are pure functions of (kernel, f, events): all randomness lives in
the events, so different engines can be run on the same realization.
"""

import logging
from typing import List, Optional, Sequence, Set

from stochmatch.arrivals.events import ArrivalEvent, Designation, designate
from stochmatch.domain.activation import PiecewiseConstantF
from stochmatch.domain.kernel import KernelInstance, VertexClass
from stochmatch.domain.matching import Matching, MatchRecord

logger = logging.getLogger(__name__)


class EngineError(ValueError):
    """Raised when an engine receives events it cannot process."""


class MatchingBuilder:
    """Tracks matched offline vertices while records are appended in event order."""

    def __init__(self):
        self.matched: Set[str] = set()
        self.records: List[MatchRecord] = []
        self._last_time = float("-inf")

    def check_order(self, event: ArrivalEvent) -> None:
        if event.time < self._last_time:
            raise EngineError(f"events are not sorted by time at t = {event.time}")
        self._last_time = event.time

    def is_free(self, offline_id: str) -> bool:
        return offline_id not in self.matched

    def propose(self, index: int, event: ArrivalEvent, offline_id: str) -> bool:
        """Match if ``offline_id`` is free; return whether it was."""
        if offline_id in self.matched:
            return False
        self.matched.add(offline_id)
        self.records.append(MatchRecord(index, event.type_id, offline_id, event.time))
        return True

    def build(self) -> Matching:
        return Matching(tuple(self.records))


def _class_of(kernel: KernelInstance, event: ArrivalEvent) -> VertexClass:
    try:
        return kernel.classes[event.type_id]
    except KeyError:
        raise EngineError(f"event of unknown online type {event.type_id!r}")


def run_esm(
    kernel: KernelInstance,
    f: PiecewiseConstantF,
    events: Sequence[ArrivalEvent],
) -> Matching:
    """Run the online algorithm on a time-sorted arrival sequence.

    A first-class arrival proposes to its only neighbor. A second-class
    arrival proposes to its first choice j1 iff r1 <= f(t); if that fails
    because j1 is taken, it proposes to j2 iff r2 <= f(t) - 1.

    Raises:
        EngineError: On an unknown type or unsorted events
    """
    builder = MatchingBuilder()
    for index, event in enumerate(events):
        builder.check_order(event)
        if _class_of(kernel, event) is VertexClass.FIRST:
            builder.propose(index, event, event.neighbors[0])
            continue

        level = f.value_at(event.time)
        if event.r1 > level:
            continue
        j1, j2 = event.choices()
        if not builder.propose(index, event, j1) and event.r2 <= level - 1.0:
            builder.propose(index, event, j2)
    return builder.build()


def designate_events(
    kernel: KernelInstance,
    f: PiecewiseConstantF,
    events: Sequence[ArrivalEvent],
) -> List[Optional[Designation]]:
    """Designation per event, None for first-class arrivals."""
    return [
        designate(e, f) if _class_of(kernel, e) is VertexClass.SECOND else None
        for e in events
    ]


def _run_designated(
    kernel: KernelInstance,
    events: Sequence[ArrivalEvent],
    designations: Sequence[Optional[Designation]],
    skip=None,
) -> Matching:
    builder = MatchingBuilder()
    for index, (event, designation) in enumerate(zip(events, designations)):
        builder.check_order(event)
        if skip is not None and skip(event, designation):
            continue
        if designation is None:
            builder.propose(index, event, event.neighbors[0])
            continue
        if designation.first is None:
            continue
        if not builder.propose(index, event, designation.first) and designation.second is not None:
            builder.propose(index, event, designation.second)
    return builder.build()


def run_esm_extended(
    kernel: KernelInstance,
    f: PiecewiseConstantF,
    events: Sequence[ArrivalEvent],
) -> Matching:
    """Run the algorithm from extended-type designations alone.

    Designations are fixed up front from each event's triple; then i(j,⊥)
    proposes to j only and i(j,j') proposes to j and, if j is taken, to j'.
    On the same events this returns exactly the matching of :func:`run_esm`.
    """
    return _run_designated(kernel, events, designate_events(kernel, f, events))


def is_key_arrival(
    kernel: KernelInstance,
    event: ArrivalEvent,
    designation: Optional[Designation],
    key_vertex: str,
) -> bool:
    """Whether the arrival is of a type that may match ``key_vertex``.

    Key types are the first-class neighbors of the vertex, *(j',*) and *(*,j').
    """
    if designation is None:
        return kernel.classes[event.type_id] is VertexClass.FIRST and event.neighbors[0] == key_vertex
    return key_vertex in (designation.first, designation.second)


def run_with_key_filter(
    kernel: KernelInstance,
    f: PiecewiseConstantF,
    events: Sequence[ArrivalEvent],
    key_vertex: str,
    x: float,
) -> Matching:
    """:func:`run_esm` with every key arrival of ``key_vertex`` before time x removed.

    Raises:
        InstanceError: If ``key_vertex`` is unknown
        EngineError: If x is outside [0, 1]
    """
    kernel.instance.require_offline(key_vertex)
    if not 0.0 <= x <= 1.0:
        raise EngineError(f"filter time must lie in [0, 1], got {x}")

    def skip(event: ArrivalEvent, designation: Optional[Designation]) -> bool:
        return event.time < x and is_key_arrival(kernel, event, designation, key_vertex)

    return _run_designated(kernel, events, designate_events(kernel, f, events), skip=skip)
