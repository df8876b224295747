"""Poisson arrival sampling and the extended-type decomposition."""

from stochmatch.arrivals.events import (
    ArrivalError,
    ArrivalEvent,
    Designation,
    ExtendedType,
    designate,
    events_to_frame,
    sort_events,
)
from stochmatch.arrivals.rates import ExtendedRates, extended_rates
from stochmatch.arrivals.sampler import (
    ArrivalModel,
    FixedCountArrivals,
    PoissonArrivals,
    sample_stream,
    substream,
    uniform_triples,
)

__all__ = [
    "ArrivalError",
    "ArrivalEvent",
    "ArrivalModel",
    "Designation",
    "ExtendedRates",
    "ExtendedType",
    "FixedCountArrivals",
    "PoissonArrivals",
    "designate",
    "events_to_frame",
    "extended_rates",
    "sample_stream",
    "sort_events",
    "substream",
    "uniform_triples",
]
