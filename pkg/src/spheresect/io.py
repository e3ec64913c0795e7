"""JSON/CSV interchange for points, configurations, section outputs, braid words and path specs."""

from __future__ import annotations

import csv
import io
import json
import math
from typing import Any

import numpy as np

from .braid import BraidWord
from .configuration import Configuration, SectionOutput
from .mobius import affine_of, as_array


class ParseError(ValueError):
    """Malformed user input; `position` locates the offending token or field."""

    def __init__(self, message: str, position: Any = None):
        where = f" at {position}" if position is not None else ""
        super().__init__(f"{message}{where}")
        self.position = position


def point_to_json(z: complex):
    if not np.isfinite(z):
        return "inf"
    return {"re": float(z.real), "im": float(z.imag)}


def point_from_json(obj, where="point"):
    if isinstance(obj, str):
        if obj.strip().lower() in ("inf", "infinity", "oo"):
            return math.inf
        try:
            return complex(obj.replace(" ", ""))
        except ValueError:
            raise ParseError(f"cannot read {obj!r} as a point", where) from None
    if isinstance(obj, (int, float)):
        return complex(obj)
    if isinstance(obj, dict) and "re" in obj:
        try:
            return complex(float(obj["re"]), float(obj.get("im", 0.0)))
        except (TypeError, ValueError):
            raise ParseError("point coordinates must be numbers", where) from None
    if isinstance(obj, (list, tuple)) and len(obj) == 2:
        return complex(float(obj[0]), float(obj[1]))
    raise ParseError(f"unrecognized point {obj!r}", where)


def points_to_json(h: np.ndarray) -> list:
    return [point_to_json(z) for z in affine_of(h)]


def config_to_json(config: Configuration) -> dict:
    return {"n": config.n, "points": points_to_json(config.h)}


def config_from_json(obj: dict, tol_sep: float | None = None) -> Configuration:
    if not isinstance(obj, dict) or "points" not in obj:
        raise ParseError("configuration needs a 'points' list", "$")
    pts = [point_from_json(p, f"$.points[{j}]") for j, p in enumerate(obj["points"])]
    if "n" in obj and obj["n"] != len(pts):
        raise ParseError(f"'n' is {obj['n']} but {len(pts)} points were given", "$.n")
    return Configuration.of(pts, tol_sep=tol_sep)


def _plain(x):
    if isinstance(x, dict):
        return {str(k): _plain(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_plain(v) for v in x]
    if isinstance(x, np.ndarray):
        return _plain(x.tolist())
    if isinstance(x, (np.integer,)):
        return int(x)
    if isinstance(x, (np.floating,)):
        return float(x)
    if isinstance(x, (complex, np.complexfloating)):
        return point_to_json(complex(x))
    return x


def output_to_json(out: SectionOutput) -> dict:
    return {"m": out.m, "method": out.method, "new_points": points_to_json(out.new_points),
            "parameters": _plain(out.parameters)}


def output_from_json(obj: dict) -> SectionOutput:
    pts = [point_from_json(p, f"$.new_points[{j}]") for j, p in enumerate(obj.get("new_points", []))]
    h = as_array(pts) if pts else np.zeros((0, 2), dtype=complex)
    return SectionOutput(h, obj.get("method", "unknown"), obj.get("parameters", {}))


def parse_word(text: str, strands: int) -> BraidWord:
    """Whitespace- or comma-separated signed integers; errors report the token position."""
    tokens = text.replace(",", " ").split()
    letters = []
    for pos, tok in enumerate(tokens, start=1):
        try:
            x = int(tok)
        except ValueError:
            raise ParseError(f"bad braid letter {tok!r}", f"token {pos}") from None
        if x == 0 or abs(x) > strands - 1:
            raise ParseError(f"generator {x} out of range for {strands} strands", f"token {pos}")
        letters.append(x)
    return BraidWord.from_ints(strands, letters)


def word_to_json(w: BraidWord) -> dict:
    return {"strands": w.strands, "letters": w.to_ints()}


def cluster_indices(config: Configuration, h: np.ndarray) -> np.ndarray:
    """Index of the nearest old point for each new point."""
    from .mobius import chordal_matrix
    if len(h) == 0:
        return np.zeros(0, dtype=int)
    return chordal_matrix(h, config.h).argmin(axis=1)


def points_csv(config: Configuration, out: SectionOutput) -> str:
    buf = io.StringIO()
    wr = csv.writer(buf, lineterminator="\n")
    wr.writerow(["re", "im", "cluster_index"])
    for z, c in zip(affine_of(out.new_points), cluster_indices(config, out.new_points)):
        if np.isfinite(z):
            wr.writerow([repr(float(z.real)), repr(float(z.imag)), int(c)])
        else:
            wr.writerow(["inf", "inf", int(c)])
    return buf.getvalue()


def dumps(obj) -> str:
    return json.dumps(_plain(obj), indent=2, sort_keys=False)
