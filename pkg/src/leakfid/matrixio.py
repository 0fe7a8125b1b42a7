"""Matrix (de)serialization in the project's JSON schema.

``{"rows": R, "cols": C, "data": [[re, im], ...]}`` with ``data`` in
row-major order and exactly ``R*C`` pairs.  Values are written with
Python's shortest-repr doubles, so a save/load round trip is bitwise
exact.
"""

from __future__ import annotations

import json
import math
from pathlib import Path

import numpy as np

from .linalg import as_complex_matrix


def matrix_to_jsonable(a) -> dict:
    """Schema dict for a matrix."""
    m = as_complex_matrix(a)
    data = [[float(z.real), float(z.imag)] for z in m.ravel()]
    return {"rows": int(m.shape[0]), "cols": int(m.shape[1]), "data": data}


def matrix_from_jsonable(obj) -> np.ndarray:
    if not isinstance(obj, dict):
        raise ValueError(f"matrix JSON must be an object, got {type(obj).__name__}")
    for key in ("rows", "cols", "data"):
        if key not in obj:
            raise ValueError(f"matrix JSON is missing the {key!r} field")
    rows, cols, data = obj["rows"], obj["cols"], obj["data"]
    if not isinstance(rows, int) or not isinstance(cols, int) or rows < 1 or cols < 1:
        raise ValueError(f"rows/cols must be positive integers, got {rows!r} x {cols!r}")
    if not isinstance(data, list):
        raise ValueError("data must be a list of [re, im] pairs")
    if len(data) != rows * cols:
        raise ValueError(f"data must hold rows*cols = {rows * cols} entries, got {len(data)}")
    out = np.empty(rows * cols, dtype=np.complex128)
    for k, entry in enumerate(data):
        if not isinstance(entry, (list, tuple)) or len(entry) != 2:
            raise ValueError(f"data[{k}] must be a [re, im] pair")
        re, im = entry
        if not isinstance(re, (int, float)) or not isinstance(im, (int, float)):
            raise ValueError(f"data[{k}] must hold two numbers")
        if not (math.isfinite(re) and math.isfinite(im)):
            raise ValueError(f"data[{k}] is not finite")
        out[k] = complex(re, im)
    return out.reshape(rows, cols)


def save_matrix(a, path) -> None:
    Path(path).write_text(json.dumps(matrix_to_jsonable(a)) + "\n")


def load_matrix(path) -> np.ndarray:
    try:
        obj = json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise ValueError(f"{path}: not valid JSON ({exc})") from exc
    try:
        return matrix_from_jsonable(obj)
    except ValueError as exc:
        raise ValueError(f"{path}: {exc}") from None
