"""System definition documents: parse and emit canonical / network configs.

A config is a single JSON object with a 'kind' discriminator and explicit
dimension fields, e.g.

    {"kind": "canonical", "m": 2, "a": 0.4, "d": -4.0, "mu_hat": 0.8,
     "b_vec": [0.0, 0.0], "e_vec": [1.0, 0.5],
     "A_block": [[0.5, 0.0], [0.0, 0.6]], "h_Y": [0.0, 1.0]}

    {"kind": "plrnn", "M": 3, "A_diag": [...], "W": [[...], ...],
     "h": [...], "relaxed_diagonal": true}

Floats are emitted via repr, which round-trips exactly, so writing and
re-reading a system reproduces it bit for bit.
"""

from __future__ import annotations

import json
import math

import numpy as np

from .cycle_solver import CanonicalSystem
from .errors import ConfigError
from .plrnn import PLRNNSystem

__all__ = [
    "parse_config",
    "read_config",
    "config_to_text",
    "write_config",
]

_CANONICAL_FIELDS = {"kind", "m", "a", "d", "mu_hat", "b_vec", "e_vec", "A_block", "h_Y"}
_PLRNN_FIELDS = {"kind", "M", "A_diag", "W", "h", "relaxed_diagonal"}


def _require(doc: dict, field: str):
    if field not in doc:
        raise ConfigError(f"missing field {field!r}")
    return doc[field]


def _number(doc: dict, field: str) -> float:
    value = _require(doc, field)
    # bool is an int subclass; reject it explicitly
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ConfigError(f"field {field!r} must be a number, got {value!r}")
    if not math.isfinite(value):
        raise ConfigError(f"field {field!r} must be finite, got {value!r}")
    return float(value)


def _dimension(doc: dict, field: str, minimum: int) -> int:
    value = _require(doc, field)
    if isinstance(value, bool) or not isinstance(value, int):
        raise ConfigError(f"field {field!r} must be an integer, got {value!r}")
    if value < minimum:
        raise ConfigError(f"field {field!r} must be >= {minimum}, got {value}")
    return value


def _vector(doc: dict, field: str, length: int) -> np.ndarray:
    value = _require(doc, field)
    if not isinstance(value, list):
        raise ConfigError(f"field {field!r} must be a list of numbers")
    if len(value) != length:
        raise ConfigError(
            f"field {field!r} must have length {length}, got {len(value)}"
        )
    out = np.empty(length)
    for idx, entry in enumerate(value):
        if isinstance(entry, bool) or not isinstance(entry, (int, float)):
            raise ConfigError(f"field {field!r}[{idx}] must be a number, got {entry!r}")
        if not math.isfinite(entry):
            raise ConfigError(f"field {field!r}[{idx}] must be finite")
        out[idx] = entry
    return out


def _matrix(doc: dict, field: str, size: int) -> np.ndarray:
    value = _require(doc, field)
    if not isinstance(value, list):
        raise ConfigError(f"field {field!r} must be a list of {size} rows")
    if len(value) != size:
        raise ConfigError(f"field {field!r} must have {size} rows, got {len(value)}")
    out = np.empty((size, size))
    for r, row in enumerate(value):
        if not isinstance(row, list) or len(row) != size:
            raise ConfigError(f"field {field!r} row {r} must be a list of {size} numbers")
        for c, entry in enumerate(row):
            if isinstance(entry, bool) or not isinstance(entry, (int, float)):
                raise ConfigError(
                    f"field {field!r}[{r}][{c}] must be a number, got {entry!r}"
                )
            if not math.isfinite(entry):
                raise ConfigError(f"field {field!r}[{r}][{c}] must be finite")
            out[r, c] = entry
    return out


def _reject_unknown(doc: dict, allowed: set) -> None:
    unknown = sorted(set(doc) - allowed)
    if unknown:
        raise ConfigError(f"unknown fields: {', '.join(repr(f) for f in unknown)}")


def parse_config(text: str):
    """Parse a config document into a CanonicalSystem or PLRNNSystem."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as err:
        raise ConfigError(
            f"not valid JSON: {err.msg} (line {err.lineno}, column {err.colno})"
        ) from err
    if not isinstance(doc, dict):
        raise ConfigError("top-level document must be a JSON object")
    kind = _require(doc, "kind")
    if kind == "canonical":
        _reject_unknown(doc, _CANONICAL_FIELDS)
        m = _dimension(doc, "m", 0)
        return CanonicalSystem(
            a=_number(doc, "a"),
            d=_number(doc, "d"),
            b_vec=_vector(doc, "b_vec", m),
            e_vec=_vector(doc, "e_vec", m),
            A_block=_matrix(doc, "A_block", m),
            h_Y=_vector(doc, "h_Y", m),
            mu_hat=_number(doc, "mu_hat"),
        )
    if kind == "plrnn":
        _reject_unknown(doc, _PLRNN_FIELDS)
        M = _dimension(doc, "M", 1)
        relaxed = doc.get("relaxed_diagonal", False)
        if not isinstance(relaxed, bool):
            raise ConfigError(
                f"field 'relaxed_diagonal' must be a boolean, got {relaxed!r}"
            )
        try:
            return PLRNNSystem(
                A_diag=_vector(doc, "A_diag", M),
                W=_matrix(doc, "W", M),
                h=_vector(doc, "h", M),
                relaxed_diagonal=relaxed,
            )
        except ValueError as err:
            raise ConfigError(f"field 'W': {err}") from err
    raise ConfigError(f"field 'kind' must be 'canonical' or 'plrnn', got {kind!r}")


def read_config(path: str):
    with open(path, encoding="utf-8") as fh:
        return parse_config(fh.read())


def config_to_text(sys) -> str:
    """Serialize a system to its config document (sorted keys, LF, repr floats)."""
    if isinstance(sys, CanonicalSystem):
        doc = {
            "kind": "canonical",
            "m": sys.m,
            "a": sys.a,
            "d": sys.d,
            "mu_hat": sys.mu_hat,
            "b_vec": sys.b_vec.tolist(),
            "e_vec": sys.e_vec.tolist(),
            "A_block": sys.A_block.tolist(),
            "h_Y": sys.h_Y.tolist(),
        }
    elif isinstance(sys, PLRNNSystem):
        doc = {
            "kind": "plrnn",
            "M": sys.M,
            "A_diag": sys.A_diag.tolist(),
            "W": sys.W.tolist(),
            "h": sys.h.tolist(),
            "relaxed_diagonal": sys.relaxed_diagonal,
        }
    else:
        raise TypeError(f"cannot serialize {type(sys).__name__}")
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


def write_config(path: str, sys) -> None:
    text = config_to_text(sys)
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)
