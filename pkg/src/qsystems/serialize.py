"""JSON round-trip for states and operators.

Layout: shape metadata plus one flat array interleaving real and imaginary
parts row-major, ``[re0, im0, re1, im1, ...]``.  Floats are written with
Python's shortest round-trip decimal encoding (at most 17 significant
digits), so load(dump(x)) reproduces every amplitude bit-exactly.
"""

from __future__ import annotations

import json
from pathlib import Path

import numpy as np

from .hilbert import DensityOperator, Operator, SpaceSpec, StateVector

__all__ = ["to_payload", "from_payload", "dumps", "loads", "save", "load"]

SCHEMA_VERSION = 1

_KINDS = {
    StateVector: "state",
    Operator: "operator",
    DensityOperator: "density",
}


def _interleave(values: np.ndarray) -> list[float]:
    flat = np.asarray(values, dtype=np.complex128).reshape(-1)
    out = np.empty(2 * flat.size, dtype=np.float64)
    out[0::2] = flat.real
    out[1::2] = flat.imag
    return [float(v) for v in out]


def _deinterleave(data: list[float]) -> np.ndarray:
    arr = np.asarray(data, dtype=np.float64)
    if arr.size % 2:
        raise ValueError("interleaved data must have even length")
    return arr[0::2] + 1j * arr[1::2]


def to_payload(obj) -> dict:
    kind = _KINDS.get(type(obj))
    if kind is None:
        raise TypeError(f"cannot serialize {type(obj).__name__}")
    values = obj.amplitudes if kind == "state" else obj.entries
    return {
        "schema_version": SCHEMA_VERSION,
        "kind": kind,
        "factor_dims": list(obj.space.factor_dims),
        "encoding": "interleaved-re-im",
        "data": _interleave(values),
    }


def from_payload(payload: dict):
    if payload.get("encoding") != "interleaved-re-im":
        raise ValueError(f"unknown encoding {payload.get('encoding')!r}")
    space = SpaceSpec(tuple(payload["factor_dims"]))
    values = _deinterleave(payload["data"])
    kind = payload["kind"]
    if kind == "state":
        return StateVector(space, values)
    d = space.total_dim
    if kind == "operator":
        return Operator(space, values.reshape(d, d))
    if kind == "density":
        return DensityOperator(space, values.reshape(d, d))
    raise ValueError(f"unknown kind {kind!r}")


def dumps(obj) -> str:
    return json.dumps(to_payload(obj), sort_keys=True)


def loads(text: str):
    return from_payload(json.loads(text))


def save(obj, path) -> None:
    Path(path).write_text(dumps(obj), encoding="utf-8")


def load(path):
    return loads(Path(path).read_text(encoding="utf-8"))
