"""JSON result records for numeric operations."""

from __future__ import annotations

import hashlib
import json


def inputs_hash(*inputs) -> str:
    text = json.dumps([str(x) for x in inputs], sort_keys=True)
    return hashlib.sha256(text.encode()).hexdigest()[:16]


def record(operation: str, inputs, value: complex, exact=None, tolerance=None, quadrature=None,
           **extra) -> dict:
    value = complex(value)
    out = {
        "operation": operation,
        "inputs_hash": inputs_hash(*inputs),
        "exact": exact,
        "value": {"re": value.real, "im": value.imag},
        "tolerance": tolerance,
        "quadrature": quadrature,
    }
    out.update(extra)
    return out


def dumps(rec: dict) -> str:
    return json.dumps(rec, sort_keys=True, default=str)
