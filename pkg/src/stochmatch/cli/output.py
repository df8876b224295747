"""Output formatting for CLI reports: deterministic JSON, CSV and run manifests."""

import hashlib
import json
import math
import sys
import time
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Dict, Mapping, Optional, Sequence, Union

import numpy as np
import pandas as pd

from stochmatch import __version__
from stochmatch.domain.activation import PiecewiseConstantF

PathLike = Union[str, Path]

FLOAT_FORMAT = ".17g"


def format_float(value: float) -> str:
    """Format a float with 17 significant digits; non-finite values become null.

    Args:
        value: Float to format

    Returns:
        JSON token such as "0.65034000000000003" or "null"
    """
    if not math.isfinite(value):
        return "null"
    text = format(value, FLOAT_FORMAT)
    if "." not in text and "e" not in text:
        text += ".0"
    return text


def _encode(value: Any, indent: int, level: int) -> str:
    pad = " " * (indent * (level + 1))
    close = " " * (indent * level)

    if value is None:
        return "null"
    if isinstance(value, (bool, np.bool_)):
        return "true" if value else "false"
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, (float, np.floating)):
        return format_float(float(value))
    if isinstance(value, (str, Path)):
        return json.dumps(str(value), ensure_ascii=False)
    if isinstance(value, Mapping):
        if not value:
            return "{}"
        items = sorted((str(k), v) for k, v in value.items())
        body = ",\n".join(
            f"{pad}{json.dumps(k, ensure_ascii=False)}: {_encode(v, indent, level + 1)}"
            for k, v in items
        )
        return "{\n" + body + "\n" + close + "}"
    if isinstance(value, (list, tuple, np.ndarray)):
        if len(value) == 0:
            return "[]"
        body = ",\n".join(f"{pad}{_encode(v, indent, level + 1)}" for v in value)
        return "[\n" + body + "\n" + close + "]"
    raise TypeError(f"cannot serialize {type(value).__name__}")


def format_json(payload: Mapping[str, Any], indent: int = 2) -> str:
    """Serialize a report with sorted keys and round-trip exact floats."""
    return _encode(payload, indent, 0) + "\n"


def format_csv(frame: pd.DataFrame) -> str:
    return frame.to_csv(float_format="%" + FLOAT_FORMAT, index=False, lineterminator="\n")


def sha256_file(path: PathLike) -> str:
    """Hex SHA-256 of a file's bytes."""
    digest = hashlib.sha256()
    with open(path, "rb") as fh:
        for block in iter(lambda: fh.read(65536), b""):
            digest.update(block)
    return digest.hexdigest()


@dataclass
class RunManifest:
    """Provenance attached to every report.

    Attributes:
        command: Subcommand path, e.g. "ratio eval"
        arguments: Parsed arguments with paths as strings
        seed: Resolved seed, or None for commands without randomness
        inputs: Input path -> SHA-256 of its contents
        version: stochmatch version
        started: perf_counter value at creation
        wall_time: Seconds elapsed, set by :meth:`finish`
    """
    command: str
    arguments: Dict[str, Any]
    seed: Optional[int] = None
    inputs: Dict[str, str] = field(default_factory=dict)
    version: str = __version__
    started: float = field(default_factory=time.perf_counter)
    wall_time: Optional[float] = None

    @classmethod
    def create(
        cls,
        command: str,
        arguments: Mapping[str, Any],
        input_paths: Sequence[PathLike] = (),
        seed: Optional[int] = None,
    ) -> "RunManifest":
        args = {k: (str(v) if isinstance(v, Path) else v) for k, v in arguments.items()}
        inputs = {str(p): sha256_file(p) for p in input_paths}
        return cls(command=command, arguments=args, seed=seed, inputs=inputs)

    def finish(self) -> "RunManifest":
        self.wall_time = time.perf_counter() - self.started
        return self

    def to_dict(self) -> Dict[str, Any]:
        return {
            "command": self.command,
            "arguments": self.arguments,
            "seed": self.seed,
            "version": self.version,
            "inputs": self.inputs,
            "wall_time": self.wall_time,
        }


def write_text(text: str, out: Optional[PathLike] = None) -> None:
    """Write UTF-8 text to ``out``, or to stdout when ``out`` is None."""
    if out is None:
        sys.stdout.write(text)
        sys.stdout.flush()
        return
    path = Path(out)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(text, encoding="utf-8")


def write_report(payload: Mapping[str, Any], manifest: RunManifest, out: Optional[PathLike] = None) -> None:
    """Write a JSON report with its manifest under the "manifest" key."""
    document = dict(payload)
    document["manifest"] = manifest.finish().to_dict()
    write_text(format_json(document), out)


def manifest_path(out: PathLike) -> Path:
    path = Path(out)
    return path.with_name(path.name + ".manifest.json")


def write_table(frame: pd.DataFrame, manifest: RunManifest, out: Optional[PathLike] = None) -> None:
    """Write a CSV table; a file target also gets a ``<out>.manifest.json`` sidecar."""
    write_text(format_csv(frame), out)
    if out is not None:
        write_text(format_json({"manifest": manifest.finish().to_dict()}), manifest_path(out))


def activation_document(f: PiecewiseConstantF) -> Dict[str, Any]:
    """Activation-function file contents: {"m": m, "values": [...]}."""
    return f.to_dict()
