"""Arrival events and their extended-type designations."""

from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Optional, Sequence, Tuple

import pandas as pd

from stochmatch.domain.activation import PiecewiseConstantF

BOTTOM = "⊥"


class ArrivalError(ValueError):
    """Raised for arrivals that cannot be designated or sampled."""


class ExtendedType(str, Enum):
    """Which proposals a second-class arrival will make."""
    NONE = "none"        # i(⊥, ⊥)
    SINGLE = "single"    # i(j, ⊥)
    DOUBLE = "double"    # i(j, j')


@dataclass(frozen=True)
class Designation:
    """Extended type of a second-class arrival: first choice and conditional second choice."""
    first: Optional[str] = None
    second: Optional[str] = None

    @property
    def kind(self) -> ExtendedType:
        if self.first is None:
            return ExtendedType.NONE
        if self.second is None:
            return ExtendedType.SINGLE
        return ExtendedType.DOUBLE

    @property
    def label(self) -> str:
        return f"({self.first or BOTTOM},{self.second or BOTTOM})"


@dataclass(frozen=True)
class ArrivalEvent:
    """One online arrival with its randomness.

    Every arrival carries a uniform triple drawn from (0, 1]: ``selector``
    picks the first choice (u = 0 when selector <= 1/2), ``r1`` gates the
    first proposal and ``r2`` the second. First-class arrivals ignore them.

    Attributes:
        time: Arrival time in [0, 1]
        type_id: Online type id
        type_index: Input position of the type
        stream_index: Position within the type's own stream
        neighbors: Offline neighbors of the type, in input order
        selector: Uniform deciding u
        r1: Uniform for the first proposal
        r2: Uniform for the second proposal
    """
    time: float
    type_id: str
    type_index: int
    stream_index: int
    neighbors: Tuple[str, ...]
    selector: float
    r1: float
    r2: float

    @property
    def u(self) -> int:
        return 0 if self.selector <= 0.5 else 1

    @property
    def sort_key(self) -> Tuple[float, int, int]:
        return (self.time, self.type_index, self.stream_index)

    @property
    def is_second_class(self) -> bool:
        return len(self.neighbors) == 2

    def choices(self) -> Tuple[str, str]:
        """(j1, j2): the neighbor selected by u and the other one."""
        if not self.is_second_class:
            raise ArrivalError(f"type {self.type_id!r} has {len(self.neighbors)} neighbors, not 2")
        j1 = self.neighbors[self.u]
        return j1, self.neighbors[1 - self.u]


def designate(event: ArrivalEvent, f: PiecewiseConstantF) -> Designation:
    """Extended type of a second-class arrival.

    i(⊥,⊥) when r1 > f(t); otherwise i(j1,j2) when r2 <= f(t) - 1 and
    i(j1,⊥) when not. Both comparisons are non-strict, the same tests
    run_esm applies, so the boundary r2 = f(t) - 1 designates i(j1,j2) and
    run_esm_extended matches run_esm draw for draw even on exact ties. A
    strict second test would only move that probability-zero boundary.

    Raises:
        ArrivalError: If the arrival is not of a second-class type
    """
    j1, j2 = event.choices()
    level = f.value_at(event.time)
    if event.r1 > level:
        return Designation()
    if event.r2 <= level - 1.0:
        return Designation(j1, j2)
    return Designation(j1, None)


def sort_events(events: Iterable[ArrivalEvent]) -> list:
    """Time order; ties broken by (type index, stream index)."""
    return sorted(events, key=lambda e: e.sort_key)


def events_to_frame(
    events: Sequence[ArrivalEvent],
    f: Optional[PiecewiseConstantF] = None,
    trial: Optional[int] = None,
) -> pd.DataFrame:
    """Event log with columns t, type, u, r1, r2, designation.

    Designation is the extended-type label for second-class arrivals when
    ``f`` is given and empty otherwise.
    """
    rows = []
    for e in events:
        label = ""
        if f is not None and e.is_second_class:
            label = designate(e, f).label
        row = {
            "t": e.time,
            "type": e.type_id,
            "u": e.u,
            "r1": e.r1,
            "r2": e.r2,
            "designation": label,
        }
        if trial is not None:
            row = {"trial": trial, **row}
        rows.append(row)
    columns = ["t", "type", "u", "r1", "r2", "designation"]
    if trial is not None:
        columns = ["trial"] + columns
    return pd.DataFrame(rows, columns=columns)
