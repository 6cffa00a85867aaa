"""Verification reports: measured values, checked claims and a JSON rendering."""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field

import numpy as np

SCHEMA = "emlab/1"
THEOREM = "theorem"
EMPIRICAL = "empirical"

_RELATIONS = {
    ">=": lambda a, b: a >= b,
    ">": lambda a, b: a > b,
    "<=": lambda a, b: a <= b,
    "<": lambda a, b: a < b,
    "==": lambda a, b: a == b,
}


@dataclass
class Claim:
    """``measured[key] <relation> bound``; ``applicable=False`` keeps it out of the verdict."""

    name: str
    key: str
    relation: str
    bound: object
    kind: str = THEOREM
    applicable: bool = True
    note: str = ""
    value: object = None
    satisfied: bool | None = None

    def evaluate(self, measured: dict) -> "Claim":
        if self.key not in measured:
            raise KeyError(f"claim {self.name!r} references unknown measurement {self.key!r}")
        self.value = measured[self.key]
        if not self.applicable:
            self.satisfied = None
        else:
            self.satisfied = bool(_RELATIONS[self.relation](self.value, self.bound))
        return self

    def to_dict(self) -> dict:
        return {
            "measured": self.key,
            "relation": self.relation,
            "bound": self.bound,
            "value": self.value,
            "satisfied": self.satisfied,
            "kind": self.kind,
            "note": self.note,
        }


@dataclass
class VerificationReport:
    construction: str
    params: dict
    measured: dict
    claims: list
    tolerances: dict = field(default_factory=dict)
    seed: int | None = None
    wall_clock: float = 0.0

    def __post_init__(self):
        for c in self.claims:
            c.evaluate(self.measured)

    @property
    def verdict(self) -> str:
        return "PASS" if all(c.satisfied for c in self.claims if c.applicable) else "FAIL"

    @property
    def passed(self) -> bool:
        return self.verdict == "PASS"

    def claim(self, name: str) -> Claim:
        for c in self.claims:
            if c.name == name:
                return c
        raise KeyError(name)

    def to_dict(self, *, wall_clock: bool = True) -> dict:
        return {
            "schema": SCHEMA,
            "construction": self.construction,
            "params": self.params,
            "measured": self.measured,
            "claims": {c.name: c.to_dict() for c in self.claims},
            "tolerances": self.tolerances,
            "seed": self.seed,
            "wall_clock": self.wall_clock if wall_clock else None,
            "verdict": self.verdict,
        }

    def to_json(self, *, wall_clock: bool = True) -> str:
        return dumps(self.to_dict(wall_clock=wall_clock))


def _plain(x):
    if isinstance(x, (np.bool_,)):
        return bool(x)
    if isinstance(x, np.integer):
        return int(x)
    if isinstance(x, np.floating):
        return float(x)
    if isinstance(x, np.ndarray):
        return [_plain(v) for v in x.tolist()]
    return x


def _emit(x, indent: int, level: int) -> str:
    x = _plain(x)
    pad = " " * (indent * (level + 1))
    end = " " * (indent * level)
    if x is None or x is True or x is False:
        return json.dumps(x)
    if isinstance(x, int):
        return str(x)
    if isinstance(x, float):
        # 17 significant digits; JSON has no inf/nan so those become null
        return f"{x:.16e}" if math.isfinite(x) else "null"
    if isinstance(x, str):
        return json.dumps(x)
    if isinstance(x, dict):
        if not x:
            return "{}"
        items = [f"{pad}{json.dumps(str(k))}: {_emit(v, indent, level + 1)}" for k, v in x.items()]
        return "{\n" + ",\n".join(items) + "\n" + end + "}"
    if isinstance(x, (list, tuple)):
        if not x:
            return "[]"
        return "[" + ", ".join(_emit(v, indent, level + 1) for v in x) + "]"
    raise TypeError(f"cannot serialize {type(x).__name__}")


def dumps(obj, indent: int = 2) -> str:
    """JSON with every float written as ``%.16e``."""
    return _emit(obj, indent, 0) + "\n"


_NUM = {"type": ["number", "null"]}
_SCALAR = {"type": ["number", "string", "boolean", "null", "array"]}

REPORT_SCHEMA = {
    "type": "object",
    "additionalProperties": False,
    "required": [
        "schema", "construction", "params", "measured", "claims",
        "tolerances", "seed", "wall_clock", "verdict",
    ],
    "properties": {
        "schema": {"const": SCHEMA},
        "construction": {"type": "string"},
        "params": {"type": "object"},
        "measured": {"type": "object", "additionalProperties": _SCALAR},
        "claims": {
            "type": "object",
            "additionalProperties": {
                "type": "object",
                "additionalProperties": False,
                "required": ["measured", "relation", "bound", "value", "satisfied", "kind", "note"],
                "properties": {
                    "measured": {"type": "string"},
                    "relation": {"enum": sorted(_RELATIONS)},
                    "bound": _SCALAR,
                    "value": _SCALAR,
                    "satisfied": {"type": ["boolean", "null"]},
                    "kind": {"enum": [THEOREM, EMPIRICAL]},
                    "note": {"type": "string"},
                },
            },
        },
        "tolerances": {"type": "object", "additionalProperties": _NUM},
        "seed": {"type": ["integer", "null"]},
        "wall_clock": _NUM,
        "verdict": {"enum": ["PASS", "FAIL"]},
    },
}
