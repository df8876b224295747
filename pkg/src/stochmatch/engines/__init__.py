"""Online matching engines driven by realized arrival sequences."""

from stochmatch.engines.esm import (
    EngineError,
    designate_events,
    is_key_arrival,
    run_esm,
    run_esm_extended,
    run_with_key_filter,
)
from stochmatch.engines.presets import ENGINE_NAMES, EngineSpec, resolve_engine
from stochmatch.engines.suggested import run_suggested, suggestion_table

__all__ = [
    "ENGINE_NAMES",
    "EngineError",
    "EngineSpec",
    "designate_events",
    "is_key_arrival",
    "resolve_engine",
    "run_esm",
    "run_esm_extended",
    "run_suggested",
    "run_with_key_filter",
    "suggestion_table",
]
