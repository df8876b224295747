"""Suggested Matching on general instances."""

import logging
from typing import Dict, List, Sequence, Tuple

from stochmatch.arrivals.events import ArrivalEvent
from stochmatch.config import config
from stochmatch.domain.instance import Instance
from stochmatch.domain.matching import Matching
from stochmatch.domain.solution import FractionalSolution
from stochmatch.engines.esm import EngineError, MatchingBuilder

logger = logging.getLogger(__name__)

SuggestionTable = Dict[str, List[Tuple[float, str]]]


def suggestion_table(
    inst: Instance,
    x: FractionalSolution,
    tol: float = config.tolerances.lp,
) -> SuggestionTable:
    """Cumulative x_ij / lambda_i thresholds per online type, neighbors in input order.

    Raises:
        EngineError: If x_i exceeds lambda_i for some type
    """
    table: SuggestionTable = {}
    for online in inst.online_types:
        xi = x.x_i(online.id)
        if xi > online.rate + tol:
            raise EngineError(f"x_i = {xi} exceeds λ = {online.rate} for type {online.id!r}")
        cumulative = 0.0
        thresholds = []
        for j in online.neighbors:
            cumulative += x.values.get((online.id, j), 0.0) / online.rate
            thresholds.append((cumulative, j))
        table[online.id] = thresholds
    return table


def run_suggested(
    inst: Instance,
    x: FractionalSolution,
    events: Sequence[ArrivalEvent],
) -> Matching:
    """Each arrival proposes once, to neighbor j with probability x_ij / lambda_i.

    The event's ``r1`` selects the neighbor: the first j whose cumulative
    share reaches r1. When r1 exceeds x_i / lambda_i no proposal is made.

    Raises:
        EngineError: If x_i > lambda_i or an event has an unknown type
    """
    table = suggestion_table(inst, x)
    builder = MatchingBuilder()
    for index, event in enumerate(events):
        builder.check_order(event)
        try:
            thresholds = table[event.type_id]
        except KeyError:
            raise EngineError(f"event of unknown online type {event.type_id!r}")
        for cumulative, j in thresholds:
            if event.r1 <= cumulative:
                builder.propose(index, event, j)
                break
    return builder.build()
