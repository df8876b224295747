"""JSON file providers for instances and activation functions."""

import logging
from pathlib import Path
from typing import Any, Optional, Tuple, Union

from stochmatch.data.feeds.instance_feed import ActivationFeed, InstanceFeed
from stochmatch.data.providers.normalizers import (
    document_to_activation,
    document_to_instance,
    read_json_document,
)
from stochmatch.domain.activation import PiecewiseConstantF
from stochmatch.domain.instance import Instance
from stochmatch.domain.solution import FractionalSolution

logger = logging.getLogger(__name__)

PathLike = Union[str, Path]


class JsonInstanceFeed(InstanceFeed):
    """Instance document with keys ``online``, ``offline``, ``weights`` and optional ``x``.

    The file is parsed once and cached.
    """

    def __init__(self, path: PathLike):
        self.path = Path(path)
        self._parsed: Optional[Tuple[Instance, Optional[FractionalSolution]]] = None

    def _load(self) -> Tuple[Instance, Optional[FractionalSolution]]:
        if self._parsed is None:
            doc: Any = read_json_document(self.path)
            self._parsed = document_to_instance(doc, self.path)
            inst = self._parsed[0]
            logger.info(
                f"Loaded {self.path}: {len(inst.online_types)} online types, "
                f"{len(inst.offline_vertices)} offline vertices, {len(inst.edges)} edges"
            )
        return self._parsed

    def get_instance(self) -> Instance:
        return self._load()[0]

    def get_solution(self) -> Optional[FractionalSolution]:
        return self._load()[1]

    def __repr__(self) -> str:
        return f"JsonInstanceFeed({str(self.path)!r})"


class JsonActivationFeed(ActivationFeed):
    """Activation document ``{"m": m, "values": [f_1, ..., f_m]}``."""

    def __init__(self, path: PathLike):
        self.path = Path(path)
        self._activation: Optional[PiecewiseConstantF] = None

    def get_activation(self) -> PiecewiseConstantF:
        if self._activation is None:
            self._activation = document_to_activation(read_json_document(self.path), self.path)
            logger.debug(f"Loaded activation {self._activation!r} from {self.path}")
        return self._activation

    def __repr__(self) -> str:
        return f"JsonActivationFeed({str(self.path)!r})"


def load_instance_file(path: PathLike) -> Tuple[Instance, Optional[FractionalSolution]]:
    feed = JsonInstanceFeed(path)
    return feed.get_instance(), feed.get_solution()


def load_activation_file(path: PathLike) -> PiecewiseConstantF:
    return JsonActivationFeed(path).get_activation()
