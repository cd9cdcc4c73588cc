"""JSON files holding operator kernels and theta assignments.

Kernel schema (``schema_version`` 1)::

    {
      "schema_version": 1,
      "kind": "fourier" | "cosine" | "laplace",
      "group": "4x3",                        # fourier / cosine
      "grid": {"h": 0.01, "N": 2001},        # laplace
      "y_samples": [0.5, 1.0, 2.0],          # laplace
      "shape": [rows, cols],
      "kernel": [[[re, im], ...], ...]       # row-major
    }
"""
from __future__ import annotations

import json
from pathlib import Path

import numpy as np

from .characterizer import KINDS, LAPLACE, LaplaceOperatorKernel, MultiplicativeOperator, ThetaAssignment
from .groups import FiniteAbelianGroup, GroupError
from .laplace import HalfLineGrid
from .signals import complex_to_pairs

SCHEMA_VERSION = 1


class KernelFileError(ValueError):
    """A kernel or theta file is unreadable or violates the schema."""


def operator_to_json(T) -> dict:
    doc = {"schema_version": SCHEMA_VERSION, "kind": T.kind}
    if T.kind == LAPLACE:
        doc["grid"] = {"h": T.grid.step, "N": T.grid.count}
        doc["y_samples"] = list(T.y_samples)
    else:
        doc["group"] = T.group.spec
    doc["shape"] = list(T.kernel.shape)
    doc["kernel"] = complex_to_pairs(T.kernel)
    return doc


def dump_operator(T, path) -> None:
    Path(path).write_text(json.dumps(operator_to_json(T)) + "\n")


def _load_json(path):
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise KernelFileError(f"{path}: cannot read ({exc.strerror})") from exc
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise KernelFileError(f"{path}: invalid JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}") from exc


def _field(doc: dict, name: str, path):
    if name not in doc:
        raise KernelFileError(f"{path}: missing field {name!r}")
    return doc[name]


def _parse_kernel(raw, shape, path) -> np.ndarray:
    if not isinstance(raw, list) or len(raw) != shape[0]:
        raise KernelFileError(f"{path}: field 'kernel' must be a list of {shape[0]} rows")
    out = np.empty(shape, dtype=complex)
    for i, row in enumerate(raw):
        if not isinstance(row, list) or len(row) != shape[1]:
            raise KernelFileError(f"{path}: kernel row {i} must hold {shape[1]} [re, im] pairs")
        for j, pair in enumerate(row):
            if (not isinstance(pair, list) or len(pair) != 2
                    or not all(isinstance(v, (int, float)) and not isinstance(v, bool) for v in pair)):
                raise KernelFileError(f"{path}: kernel[{i}][{j}] is not an [re, im] pair of numbers")
            out[i, j] = complex(pair[0], pair[1])
    if not np.all(np.isfinite(out)):
        raise KernelFileError(f"{path}: field 'kernel' contains non-finite values")
    return out


def operator_from_json(doc, path="<operator>"):
    if not isinstance(doc, dict):
        raise KernelFileError(f"{path}: top level must be an object")
    version = _field(doc, "schema_version", path)
    if version != SCHEMA_VERSION:
        raise KernelFileError(f"{path}: unsupported schema_version {version!r}")
    kind = _field(doc, "kind", path)
    if kind not in KINDS:
        raise KernelFileError(f"{path}: field 'kind' must be one of {KINDS}, got {kind!r}")
    shape = _field(doc, "shape", path)
    if not (isinstance(shape, list) and len(shape) == 2 and all(isinstance(s, int) and s >= 0 for s in shape)):
        raise KernelFileError(f"{path}: field 'shape' must be [rows, cols]")
    K = _parse_kernel(_field(doc, "kernel", path), tuple(shape), path)
    try:
        if kind == LAPLACE:
            grid_doc = _field(doc, "grid", path)
            if not isinstance(grid_doc, dict):
                raise KernelFileError(f"{path}: field 'grid' must be an object with 'h' and 'N'")
            grid = HalfLineGrid(_field(grid_doc, "h", path), _field(grid_doc, "N", path))
            return LaplaceOperatorKernel(grid, tuple(_field(doc, "y_samples", path)), K)
        group = FiniteAbelianGroup.parse(_field(doc, "group", path))
        return MultiplicativeOperator(group, kind, K)
    except (ValueError, TypeError, GroupError) as exc:
        if isinstance(exc, KernelFileError):
            raise
        raise KernelFileError(f"{path}: {exc}") from exc


def load_operator(path):
    return operator_from_json(_load_json(path), path)


def load_theta(path) -> ThetaAssignment:
    doc = _load_json(path)
    if isinstance(doc, list):
        raise KernelFileError(f"{path}: theta file must be an object with 'kind' and 'targets'")
    try:
        return ThetaAssignment.from_json(doc)
    except (KeyError, TypeError, ValueError) as exc:
        raise KernelFileError(f"{path}: malformed theta ({exc})") from exc
