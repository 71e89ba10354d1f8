"""JSON encodings for exact values and witnesses.

Exact quantities are integer pairs; the ``decimal`` fields are rounded to
12 digits for display only and are ignored by ``rational_from_json`` and
``logvalue_from_json``.
"""

from __future__ import annotations

import hashlib
import json
from fractions import Fraction

from .codes import GuessingStrategy, IndexCode
from .logvalue import Complement, LogValue
from .network import CodingAssignment
from .words import Code


def rational_json(q) -> dict:
    q = Fraction(q)
    return {"num": q.numerator, "den": q.denominator, "decimal": round(float(q), 12)}


def rational_from_json(data: dict) -> Fraction:
    return Fraction(int(data["num"]), int(data["den"]))


def logvalue_json(v: LogValue) -> dict:
    return {"count": v.count, "base": v.base, "decimal": round(v.decimal(), 12)}


def logvalue_from_json(data: dict) -> LogValue:
    return LogValue(int(data["count"]), int(data["base"]))


def complement_json(c: Complement) -> dict:
    return {"n": c.n, "length": logvalue_json(c.length), "decimal": round(float(c), 12)}


def coloring_json(ic: IndexCode) -> dict:
    return {"n": ic.n, "s": ic.s, "colours": ic.as_dict()}


def to_json(obj):
    """Recursively encode package values into plain JSON types."""
    if isinstance(obj, bool) or obj is None or isinstance(obj, (int, str, float)):
        return obj
    if isinstance(obj, Fraction):
        return rational_json(obj)
    if isinstance(obj, LogValue):
        return logvalue_json(obj)
    if isinstance(obj, Complement):
        return complement_json(obj)
    if isinstance(obj, (Code, GuessingStrategy, CodingAssignment)):
        return obj.to_json()
    if isinstance(obj, IndexCode):
        return coloring_json(obj)
    if isinstance(obj, dict):
        return {str(k): to_json(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple, set, frozenset)):
        items = sorted(obj) if isinstance(obj, (set, frozenset)) else obj
        return [to_json(v) for v in items]
    raise TypeError(f"cannot encode {type(obj).__name__}")


def dumps(obj) -> str:
    return json.dumps(to_json(obj), sort_keys=True, indent=2)


def sha256_text(data: bytes) -> str:
    return hashlib.sha256(data).hexdigest()


def load_assignment(text: str) -> CodingAssignment:
    """Assignment file: ``{"s": S, "tables": {vertex: flat table}}``, tables
    row-major over ascending in-neighbour tuples."""
    return CodingAssignment.from_json(json.loads(text))
