"""Reproducible arrival sampling with one counter-based substream per (seed, trial, type)."""

import logging
import math
from abc import ABC, abstractmethod
from typing import List, Optional

import numpy as np

from stochmatch.arrivals.events import ArrivalError, ArrivalEvent, sort_events
from stochmatch.domain.instance import Instance

logger = logging.getLogger(__name__)


def substream(seed: int, trial: int, stream: int) -> np.random.Generator:
    """Independent generator for one (seed, trial, stream) triple.

    Philox is keyed by the seed and started at a counter holding the trial
    and stream indices, so any trial can be regenerated on its own.
    """
    if seed < 0 or trial < 0 or stream < 0:
        raise ArrivalError(f"seed, trial and stream must be >= 0, got {(seed, trial, stream)}")
    return np.random.Generator(np.random.Philox(key=seed, counter=[0, 0, trial, stream]))


def sample_stream(rate: float, rng: np.random.Generator) -> np.ndarray:
    """Arrival times of a homogeneous Poisson process on [0, 1].

    Exponential gaps with mean 1/rate are accumulated until the horizon is
    passed; gaps are drawn in batches but consumed in order.

    Raises:
        ArrivalError: If rate is negative or not finite
    """
    if not math.isfinite(rate) or rate < 0:
        raise ArrivalError(f"rate must be finite and >= 0, got {rate}")
    if rate == 0:
        return np.empty(0)

    batch = max(8, int(rate + 4.0 * math.sqrt(rate) + 4))
    times: List[np.ndarray] = []
    clock = 0.0
    while True:
        arrivals = clock + np.cumsum(rng.exponential(1.0 / rate, size=batch))
        inside = arrivals[arrivals <= 1.0]
        times.append(inside)
        if inside.size < batch:
            break
        clock = float(arrivals[-1])
    return np.concatenate(times)


def uniform_triples(rng: np.random.Generator, n: int) -> np.ndarray:
    """(n, 3) uniforms on (0, 1]."""
    return 1.0 - rng.random((n, 3))


class ArrivalModel(ABC):
    """Source of one trial's arrival sequence for an instance."""

    @abstractmethod
    def sample(self, inst: Instance, seed: int, trial: int) -> List[ArrivalEvent]:
        """Arrivals of trial ``trial`` sorted by (time, type index, stream index)."""
        pass


class PoissonArrivals(ArrivalModel):
    """Each online type arrives as an independent Poisson process with its rate."""

    def sample(self, inst: Instance, seed: int, trial: int) -> List[ArrivalEvent]:
        events: List[ArrivalEvent] = []
        for type_index, online in enumerate(inst.online_types):
            rng = substream(seed, trial, type_index)
            times = sample_stream(online.rate, rng)
            draws = uniform_triples(rng, times.size)
            for k in range(times.size):
                events.append(ArrivalEvent(
                    time=float(times[k]),
                    type_id=online.id,
                    type_index=type_index,
                    stream_index=k,
                    neighbors=online.neighbors,
                    selector=float(draws[k, 0]),
                    r1=float(draws[k, 1]),
                    r2=float(draws[k, 2]),
                ))
        return sort_events(events)

    def __repr__(self) -> str:
        return "PoissonArrivals()"


class FixedCountArrivals(ArrivalModel):
    """Exactly n arrivals, each of type i with probability lambda_i / Lambda.

    Arrival k (1-based) is stamped with time k/n. Without an explicit ``n``
    the total rate must be a positive integer and is used as n. Meant only
    for side-by-side comparison with the Poisson model.
    """

    def __init__(self, n: Optional[int] = None):
        if n is not None and n < 1:
            raise ArrivalError(f"n must be >= 1, got {n}")
        self.n = n

    def count_for(self, inst: Instance) -> int:
        if self.n is not None:
            return self.n
        total = inst.total_rate
        n = round(total)
        if n < 1 or abs(total - n) > 1e-9:
            raise ArrivalError(
                f"fixed-count arrivals need an integral total rate or explicit n, got Λ = {total}"
            )
        return n

    def sample(self, inst: Instance, seed: int, trial: int) -> List[ArrivalEvent]:
        n = self.count_for(inst)
        if not inst.online_types:
            return []
        rates = np.array([t.rate for t in inst.online_types], dtype=float)
        rng = substream(seed, trial, len(inst.online_types))
        kinds = rng.choice(len(rates), size=n, p=rates / rates.sum())
        draws = uniform_triples(rng, n)

        seen = [0] * len(rates)
        events = []
        for k in range(n):
            type_index = int(kinds[k])
            online = inst.online_types[type_index]
            events.append(ArrivalEvent(
                time=(k + 1) / n,
                type_id=online.id,
                type_index=type_index,
                stream_index=seen[type_index],
                neighbors=online.neighbors,
                selector=float(draws[k, 0]),
                r1=float(draws[k, 1]),
                r2=float(draws[k, 2]),
            ))
            seen[type_index] += 1
        return events

    def __repr__(self) -> str:
        return f"FixedCountArrivals(n={self.n})"
