"""Named algorithm presets: ESM with a given f and its special cases."""

import logging
from dataclasses import dataclass
from typing import Optional, Sequence

from stochmatch.arrivals.events import ArrivalEvent
from stochmatch.domain.activation import PiecewiseConstantF, five_level_activation, msm_activation
from stochmatch.domain.kernel import KernelInstance
from stochmatch.domain.matching import Matching
from stochmatch.engines.esm import EngineError, run_esm
from stochmatch.engines.suggested import run_suggested

logger = logging.getLogger(__name__)

ENGINE_NAMES = ("esm", "sm", "two-choice", "msm")


@dataclass(frozen=True)
class EngineSpec:
    """An engine name with the activation function it runs, None for Suggested Matching."""
    name: str
    activation: Optional[PiecewiseConstantF] = None

    def run(self, kernel: KernelInstance, events: Sequence[ArrivalEvent]) -> Matching:
        if self.activation is None:
            return run_suggested(kernel.instance, kernel.x, events)
        return run_esm(kernel, self.activation, events)

    def to_dict(self):
        return {
            "name": self.name,
            "activation": None if self.activation is None else self.activation.to_dict(),
        }


def resolve_engine(name: str, f: Optional[PiecewiseConstantF] = None) -> EngineSpec:
    """Build the EngineSpec for a preset name.

    ``esm`` runs ``f``, defaulting to the five-level certified function;
    ``two-choice`` is f = 2 and ``msm`` the three-stage step function, both
    ignoring ``f``; ``sm`` draws neighbors from x.

    Raises:
        EngineError: For an unknown name
    """
    if name == "esm":
        if f is None:
            logger.info("No activation function given; using the five-level default")
            f = five_level_activation()
        return EngineSpec(name, f)
    if name not in ENGINE_NAMES:
        raise EngineError(f"unknown engine {name!r}, expected one of {', '.join(ENGINE_NAMES)}")
    if f is not None:
        logger.warning(f"Engine {name!r} has a fixed activation; ignoring the given f")
    if name == "sm":
        return EngineSpec(name, None)
    if name == "two-choice":
        return EngineSpec(name, PiecewiseConstantF.constant(2.0))
    return EngineSpec(name, msm_activation())
