"""Normalization of parsed JSON documents into domain models."""

import json
import logging
import math
from pathlib import Path
from typing import Any, Dict, List, Optional, Tuple

from stochmatch.domain.activation import PiecewiseConstantF
from stochmatch.domain.instance import Edge, Instance, OnlineType
from stochmatch.domain.solution import FractionalSolution

logger = logging.getLogger(__name__)


class InstanceFileError(ValueError):
    """Malformed instance or activation file.

    Attributes:
        path: File the error refers to
        line: 1-based line number when the JSON itself is invalid
        column: 1-based column number when the JSON itself is invalid
        key: Dotted location of the offending entry, e.g. ``online[1].rate``
    """

    def __init__(
        self,
        message: str,
        path: Optional[Path] = None,
        line: Optional[int] = None,
        column: Optional[int] = None,
        key: Optional[str] = None,
    ):
        self.path = path
        self.line = line
        self.column = column
        self.key = key

        where = []
        if path is not None:
            where.append(str(path))
        if line is not None:
            where.append(f"line {line}, column {column}")
        if key is not None:
            where.append(key)
        prefix = ": ".join(where)
        super().__init__(f"{prefix}: {message}" if prefix else message)


def read_json_document(path: Path) -> Any:
    """Read and parse a UTF-8 JSON file, reporting the position of syntax errors."""
    try:
        text = path.read_text(encoding="utf-8")
    except FileNotFoundError:
        raise InstanceFileError("file not found", path=path)
    except UnicodeDecodeError as e:
        raise InstanceFileError(f"not valid UTF-8 ({e.reason})", path=path)

    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise InstanceFileError(e.msg, path=path, line=e.lineno, column=e.colno)


def _require(entry: Any, key: str, where: str, path: Optional[Path]) -> Any:
    if not isinstance(entry, dict):
        raise InstanceFileError("expected an object", path=path, key=where)
    if key not in entry:
        raise InstanceFileError(f"missing key {key!r}", path=path, key=where)
    return entry[key]


def _require_list(doc: Dict[str, Any], key: str, path: Optional[Path], optional: bool = False) -> List[Any]:
    if key not in doc:
        if optional:
            return []
        raise InstanceFileError(f"missing key {key!r}", path=path)
    value = doc[key]
    if not isinstance(value, list):
        raise InstanceFileError("expected an array", path=path, key=key)
    return value


def normalize_vertex_id(value: Any, where: str, path: Optional[Path] = None) -> str:
    """Vertex ids are opaque non-empty strings."""
    if not isinstance(value, str) or not value.strip():
        raise InstanceFileError(f"vertex id must be a non-empty string, got {value!r}", path=path, key=where)
    return value.strip()


def parse_number(value: Any, where: str, path: Optional[Path] = None) -> float:
    """Accept finite JSON numbers; booleans and strings are rejected."""
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise InstanceFileError(f"expected a number, got {value!r}", path=path, key=where)
    number = float(value)
    if not math.isfinite(number):
        raise InstanceFileError(f"expected a finite number, got {value!r}", path=path, key=where)
    return number


def online_entry_to_type(entry: Any, position: int, path: Optional[Path] = None) -> OnlineType:
    where = f"online[{position}]"
    type_id = normalize_vertex_id(_require(entry, "id", where, path), f"{where}.id", path)
    rate = parse_number(_require(entry, "rate", where, path), f"{where}.rate", path)
    neighbors = _require(entry, "neighbors", where, path)
    if not isinstance(neighbors, list):
        raise InstanceFileError("expected an array", path=path, key=f"{where}.neighbors")
    return OnlineType(
        id=type_id,
        rate=rate,
        neighbors=tuple(
            normalize_vertex_id(j, f"{where}.neighbors[{k}]", path) for k, j in enumerate(neighbors)
        ),
    )


def weight_entry_to_edge(entry: Any, position: int, path: Optional[Path] = None) -> Edge:
    where = f"weights[{position}]"
    return Edge(
        online=normalize_vertex_id(_require(entry, "i", where, path), f"{where}.i", path),
        offline=normalize_vertex_id(_require(entry, "j", where, path), f"{where}.j", path),
        weight=parse_number(_require(entry, "w", where, path), f"{where}.w", path),
    )


def x_entry_to_value(entry: Any, position: int, path: Optional[Path] = None) -> Tuple[Tuple[str, str], float]:
    where = f"x[{position}]"
    i = normalize_vertex_id(_require(entry, "i", where, path), f"{where}.i", path)
    j = normalize_vertex_id(_require(entry, "j", where, path), f"{where}.j", path)
    return (i, j), parse_number(_require(entry, "x", where, path), f"{where}.x", path)


def document_to_instance(doc: Any, path: Optional[Path] = None) -> Tuple[Instance, Optional[FractionalSolution]]:
    """Convert a parsed instance document into an Instance and optional x.

    Raises:
        InstanceFileError: With the key path of the first malformed entry
    """
    if not isinstance(doc, dict):
        raise InstanceFileError("top level must be an object", path=path)

    online = [online_entry_to_type(e, k, path) for k, e in enumerate(_require_list(doc, "online", path))]
    offline = [
        normalize_vertex_id(j, f"offline[{k}]", path)
        for k, j in enumerate(_require_list(doc, "offline", path))
    ]
    edges = [weight_entry_to_edge(e, k, path) for k, e in enumerate(_require_list(doc, "weights", path))]

    solution = None
    if "x" in doc:
        values: Dict[Tuple[str, str], float] = {}
        for k, e in enumerate(_require_list(doc, "x", path)):
            key, value = x_entry_to_value(e, k, path)
            if key in values:
                raise InstanceFileError(f"duplicate x entry for edge {key}", path=path, key=f"x[{k}]")
            values[key] = value
        solution = FractionalSolution(values)

    return Instance(tuple(online), tuple(offline), tuple(edges)), solution


def document_to_activation(doc: Any, path: Optional[Path] = None) -> PiecewiseConstantF:
    """Convert ``{"m": m, "values": [...]}`` into a PiecewiseConstantF."""
    if not isinstance(doc, dict):
        raise InstanceFileError("top level must be an object", path=path)
    m = _require(doc, "m", "activation", path)
    if isinstance(m, bool) or not isinstance(m, int) or m < 1:
        raise InstanceFileError(f"m must be a positive integer, got {m!r}", path=path, key="m")
    raw = _require_list(doc, "values", path)
    if len(raw) != m:
        raise InstanceFileError(f"expected {m} values, got {len(raw)}", path=path, key="values")
    values = tuple(parse_number(v, f"values[{k}]", path) for k, v in enumerate(raw))
    try:
        return PiecewiseConstantF(values)
    except ValueError as e:
        raise InstanceFileError(str(e), path=path, key="values")
