"""Property-check records and their deterministic JSON serialization."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import List

__all__ = ["PropertyEntry", "PropertyReport", "dumps_json"]


@dataclass(frozen=True)
class PropertyEntry:
    """Outcome of one identity check.

    For ordinary entries ``passed`` means ``max_residual <= tolerance``. Entries
    whose name ends in ``-witness`` demonstrate that an identity *fails*; for
    them ``passed`` means ``max_residual > tolerance``.
    """

    name: str
    paper_anchor: str
    samples: int
    max_residual: float
    tolerance: float
    passed: bool

    @property
    def is_witness(self) -> bool:
        return self.name.endswith("-witness")

    @classmethod
    def judge(cls, name: str, anchor: str, samples: int, max_residual: float, tolerance: float):
        r = float(max_residual)
        if name.endswith("-witness"):
            ok = r > tolerance
        else:
            ok = r <= tolerance
        return cls(name, anchor, int(samples), r, float(tolerance), bool(ok))

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "paper_anchor": self.paper_anchor,
            "samples": self.samples,
            "max_residual": self.max_residual,
            "tolerance": self.tolerance,
            "passed": self.passed,
        }


@dataclass(frozen=True)
class PropertyReport:
    entries: List[PropertyEntry] = field(default_factory=list)
    seed: int = 0
    suite_version: str = ""

    def __post_init__(self):
        if not self.entries:
            raise ValueError("a property report needs at least one entry")

    @property
    def passed(self) -> bool:
        return all(e.passed for e in self.entries)

    def to_dict(self) -> dict:
        return {
            "entries": [e.to_dict() for e in self.entries],
            "seed": self.seed,
            "suite_version": self.suite_version,
        }

    def to_json(self, precision: int = 17) -> str:
        return dumps_json(self.to_dict(), precision)


def _fmt_float(v: float, precision: int) -> str:
    if math.isnan(v):
        return "NaN"
    if math.isinf(v):
        return "Infinity" if v > 0 else "-Infinity"
    s = format(v, f".{precision}g")
    if not any(c in s for c in ".eEn"):
        s += ".0"
    return s


def dumps_json(obj, precision: int = 17, indent: int = 2, _level: int = 0) -> str:
    """JSON text with floats rendered to ``precision`` significant digits.

    Key order is preserved, so equal inputs give byte-identical output.
    """
    import json

    pad = " " * (indent * (_level + 1))
    end = " " * (indent * _level)
    if isinstance(obj, bool) or obj is None:
        return json.dumps(obj)
    if isinstance(obj, int):
        return str(obj)
    if isinstance(obj, float):
        return _fmt_float(obj, precision)
    if isinstance(obj, str):
        return json.dumps(obj)
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [f"{pad}{json.dumps(str(k))}: {dumps_json(v, precision, indent, _level + 1)}" for k, v in obj.items()]
        return "{\n" + ",\n".join(items) + "\n" + end + "}"
    if isinstance(obj, (list, tuple)):
        if not obj:
            return "[]"
        if all(isinstance(v, (int, float)) and not isinstance(v, bool) for v in obj):
            return "[" + ", ".join(dumps_json(v, precision) for v in obj) + "]"
        items = [pad + dumps_json(v, precision, indent, _level + 1) for v in obj]
        return "[\n" + ",\n".join(items) + "\n" + end + "]"
    if hasattr(obj, "item"):  # numpy scalar
        return dumps_json(obj.item(), precision, indent, _level)
    raise TypeError(f"cannot serialize {type(obj).__name__}")
