"""Instance descriptors as ``key = value`` text."""

from __future__ import annotations

from ..errors import ParseError

KINDS = ("cayley", "bounded", "approx", "km", "friedman", "lemmas")


def _bool(text: str) -> bool:
    low = text.lower()
    if low in ("1", "true", "yes", "on"):
        return True
    if low in ("0", "false", "no", "off"):
        return False
    raise ValueError(f"not a boolean: {text!r}")


def _int_list(text: str) -> list:
    return [int(x) for x in text.split(",") if x.strip()]


FIELDS = {
    "construction": str,
    "q": int,
    "m": int,
    "n": int,
    "ell": int,
    "eps": float,
    "seed": int,
    "tol": float,
    "budget": int,
    "tries": int,
    "petersen": _bool,
    "samples": int,
    "bins": int,
    "threshold": float,
    "slack": float,
    "required": int,
    "ells": _int_list,
    "ms": _int_list,
}


def parse_config(text: str) -> dict:
    """Blank lines and ``#`` comments are ignored; keys must be known."""
    out: dict = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ParseError(f"expected 'key = value', got {raw!r}", lineno)
        key, value = (part.strip() for part in line.split("=", 1))
        if key not in FIELDS:
            raise ParseError(f"unknown key {key!r}", lineno)
        if key in out:
            raise ParseError(f"duplicate key {key!r}", lineno)
        try:
            out[key] = FIELDS[key](value)
        except ValueError as exc:
            raise ParseError(f"bad value for {key}: {exc}", lineno) from None
    if "construction" not in out:
        raise ParseError("missing 'construction' key", None)
    if out["construction"] not in KINDS:
        raise ParseError(f"unknown construction {out['construction']!r}", None)
    return out


def dump_config(cfg: dict) -> str:
    keys = ["construction"] + [k for k in cfg if k != "construction"]
    lines = []
    for k in keys:
        v = cfg[k]
        if isinstance(v, bool):
            v = "true" if v else "false"
        elif isinstance(v, (list, tuple)):
            v = ",".join(str(x) for x in v)
        elif isinstance(v, float):
            v = repr(v)
        lines.append(f"{k} = {v}")
    return "\n".join(lines) + "\n"
