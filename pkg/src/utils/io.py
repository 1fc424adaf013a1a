""" Atomic file output and deterministic JSON/CSV emitters """

import json
import math
import os
import tempfile
from pathlib import Path
from typing import Any, Mapping, Union

import numpy as np
import pandas as pd

PathLike = Union[str, Path]


def write_bytes_atomic(path: PathLike, payload: bytes) -> Path:
    """
    Write bytes to `path` through a temporary file in the same directory.

    The final name only ever holds a complete file: the temporary file is
    flushed and then renamed over the target.
    """
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp_name = tempfile.mkstemp(prefix=f".{path.name}.", suffix=".tmp", dir=path.parent)
    try:
        with os.fdopen(fd, "wb") as handle:
            handle.write(payload)
            handle.flush()
            os.fsync(handle.fileno())
        os.replace(tmp_name, path)
    except BaseException:
        if os.path.exists(tmp_name):
            os.unlink(tmp_name)
        raise
    return path


def write_text_atomic(path: PathLike, text: str) -> Path:
    return write_bytes_atomic(path, text.encode("utf-8"))


def _finite_or_none(value: Any) -> Any:
    if isinstance(value, float) and not math.isfinite(value):
        return None
    if isinstance(value, dict):
        return {key: _finite_or_none(item) for key, item in value.items()}
    if isinstance(value, (list, tuple)):
        return [_finite_or_none(item) for item in value]
    return value


def _json_default(value: Any):
    if isinstance(value, (np.generic, np.ndarray)):
        return _finite_or_none(value.tolist())
    if isinstance(value, Path):
        return str(value)
    raise TypeError(f"{type(value).__name__} is not JSON serialisable")


def to_json_text(payload: Mapping[str, Any]) -> str:
    """Stable JSON: sorted keys, two-space indent, trailing newline; NaN and infinities become null."""
    return json.dumps(_finite_or_none(payload), sort_keys=True, indent=2, default=_json_default, allow_nan=False) + "\n"


def write_json(path: PathLike, payload: Mapping[str, Any]) -> Path:
    return write_text_atomic(path, to_json_text(payload))


def frame_to_csv_text(frame: pd.DataFrame) -> str:
    """RFC-4180 CSV with a header row and round-trippable floats."""
    return frame.to_csv(index=False, lineterminator="\n", float_format="%.17g")


def write_csv(path: PathLike, frame: pd.DataFrame) -> Path:
    return write_text_atomic(path, frame_to_csv_text(frame))
