"""Matchings produced by a single run of an online algorithm."""

from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

from stochmatch.domain.instance import Instance


@dataclass(frozen=True)
class MatchRecord:
    """One matched arrival: event position, the edge used, and the time."""
    event_index: int
    online: str
    offline: str
    time: float

    @property
    def edge(self) -> Tuple[str, str]:
        return (self.online, self.offline)


@dataclass(frozen=True)
class Matching:
    """Irrevocable matching built in arrival order.

    Attributes:
        records: Match records in the order they were made
    """
    records: Tuple[MatchRecord, ...] = field(default_factory=tuple)

    def __post_init__(self):
        object.__setattr__(self, "records", tuple(self.records))

    @property
    def size(self) -> int:
        return len(self.records)

    @property
    def edges(self) -> List[Tuple[str, str]]:
        return [r.edge for r in self.records]

    def match_times(self) -> Dict[str, float]:
        """Match time per matched offline vertex."""
        return {r.offline: r.time for r in self.records}

    def match_time(self, offline_id: str) -> Optional[float]:
        for r in self.records:
            if r.offline == offline_id:
                return r.time
        return None

    def is_matched(self, offline_id: str) -> bool:
        return self.match_time(offline_id) is not None

    def contains_edge(self, online_id: str, offline_id: str) -> bool:
        return any(r.online == online_id and r.offline == offline_id for r in self.records)

    def unmatched_at(self, offline_id: str, t: float) -> bool:
        """U_j(t): True iff j is still unmatched before events at time t are processed."""
        matched = self.match_time(offline_id)
        return matched is None or matched >= t

    def validate(self, inst: Instance) -> List[str]:
        """Violations of the matching invariants, empty when valid."""
        problems: List[str] = []
        seen_offline = set()
        seen_events = set()
        last_time = float("-inf")
        last_event = -1
        for r in self.records:
            if r.offline in seen_offline:
                problems.append(f"offline vertex {r.offline!r} matched twice")
            seen_offline.add(r.offline)
            if r.event_index in seen_events:
                problems.append(f"event {r.event_index} matched twice")
            seen_events.add(r.event_index)
            if r.edge not in inst.edge_index:
                problems.append(f"matched edge {r.edge} is not in the instance")
            if r.event_index < last_event:
                problems.append(f"event {r.event_index} recorded out of order")
            if r.time < last_time:
                problems.append(f"match time {r.time} decreases")
            last_time = r.time
            last_event = r.event_index
        return problems

    def __repr__(self) -> str:
        return f"Matching({self.size} edges)"
