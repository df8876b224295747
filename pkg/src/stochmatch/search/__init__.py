"""Search for activation functions maximizing the certified ratio."""

from stochmatch.search.coordinate_ascent import CoordinateAscent
from stochmatch.search.search import (
    ActivationSearch,
    ActivationSearchResult,
    SearchConfig,
    optimize,
    random_start,
)
from stochmatch.search.state import AscentState, LevelGrid

__all__ = [
    "ActivationSearch",
    "ActivationSearchResult",
    "AscentState",
    "CoordinateAscent",
    "LevelGrid",
    "SearchConfig",
    "optimize",
    "random_start",
]
