"""JSON parsing and serialization for points, boundary points, rays,
actions and reports.  The schemas are documented in docs/formats.md."""

from __future__ import annotations

import math
from dataclasses import is_dataclass, fields
from fractions import Fraction

from . import spaces as sp
from .trees import (
    CayleyTree,
    HnnDown,
    HnnTree,
    HnnUp,
    HnnVertex,
    TreePoint,
    WordEnd,
    make_word_end,
)


def parse_fraction(value) -> Fraction:
    if isinstance(value, bool):
        raise ValueError("booleans are not numbers here")
    if isinstance(value, (int, str)):
        return Fraction(value)
    if isinstance(value, float):
        if not value.is_integer():
            raise ValueError(f"{value} is not exact; pass a string like '1/3'")
        return Fraction(int(value))
    raise ValueError(f"cannot read {value!r} as an exact rational")


def parse_cayley_word(word, rank: int) -> tuple[int, ...]:
    """Words as int lists (1 = first generator, negative = inverse) or as
    strings with uppercase letters for inverses ("abA")."""
    if isinstance(word, str):
        letters = []
        for ch in word:
            idx = ord(ch.lower()) - ord("a") + 1
            if not 1 <= idx <= rank:
                raise ValueError(f"letter {ch!r} outside rank {rank}")
            letters.append(-idx if ch.isupper() else idx)
        return tuple(letters)
    return tuple(int(x) for x in word)


def parse_point(space: sp.ModelSpace, data):
    if isinstance(space, sp.EuclideanSpace):
        return space.check_point(tuple(float(c) for c in data))
    if isinstance(space, sp.HyperbolicPlane):
        if isinstance(data, dict):
            return space.check_point(complex(float(data["x"]), float(data["y"])))
        x, y = data
        return space.check_point(complex(float(x), float(y)))
    model = space.model
    if isinstance(data, dict):
        vertex = parse_vertex(space, data["vertex"])
        up = parse_fraction(data.get("up", 0))
        return space.check_point(TreePoint(vertex, up))
    return space.check_point(TreePoint(parse_vertex(space, data)))


def parse_vertex(space: sp.TreeSpace, data):
    model = space.model
    if isinstance(model, HnnTree):
        return HnnVertex(int(data["level"]), parse_fraction(data["center"]))
    if isinstance(model, CayleyTree):
        return parse_cayley_word(data, model.rank)
    return tuple(int(x) for x in data)


def parse_boundary(space: sp.ModelSpace, data):
    if isinstance(space, sp.EuclideanSpace):
        return space.check_boundary(sp.EDirection(tuple(float(c) for c in data["direction"])))
    if isinstance(space, sp.HyperbolicPlane):
        xi = data["xi"] if isinstance(data, dict) else data
        if xi in ("inf", "oo", "infinity"):
            return sp.H2_INFINITY
        return space.check_boundary(parse_fraction(xi))
    model = space.model
    if "up" in data and data["up"] is True:
        return space.check_boundary(HnnUp())
    if "down" in data:
        return space.check_boundary(HnnDown(parse_fraction(data["down"])))
    if isinstance(model, CayleyTree):
        prefix = parse_cayley_word(data.get("prefix", ()), model.rank)
        period = parse_cayley_word(data["period"], model.rank)
    else:
        prefix = tuple(int(x) for x in data.get("prefix", ()))
        period = tuple(int(x) for x in data["period"])
    return space.check_boundary(make_word_end(prefix, period))


def parse_end_or_point(space: sp.ModelSpace, data):
    """Ray targets: {"boundary": B} or {"point": P}."""
    if isinstance(data, dict) and "boundary" in data:
        return parse_boundary(space, data["boundary"])
    if isinstance(data, dict) and "point" in data:
        return parse_point(space, data["point"])
    raise ValueError('ray target must be {"boundary": ...} or {"point": ...}')


def parse_ray(space: sp.ModelSpace, data) -> sp.GeneralizedRay:
    base = parse_point(space, data["base"])
    end = parse_end_or_point(space, data["end"])
    return sp.ray_from(space, base, end)


# ---------------------------------------------------------------------------
# Serialization


def jsonable(value):
    """Recursively convert package values to JSON-safe structures.

    Exact rationals become "p/q" strings, infinities the string "inf",
    and geometry objects small tagged dicts.
    """
    if value is None or isinstance(value, (bool, int, str)):
        return value
    if isinstance(value, float):
        if math.isinf(value):
            return "inf" if value > 0 else "-inf"
        if math.isnan(value):
            return "nan"
        return value
    if isinstance(value, Fraction):
        return f"{value.numerator}/{value.denominator}" if value.denominator != 1 else str(value.numerator)
    if isinstance(value, complex):
        return {"x": value.real, "y": value.imag}
    if isinstance(value, sp.EDirection):
        return {"direction": [jsonable(c) for c in value.vector]}
    if isinstance(value, HnnUp):
        return {"up": True}
    if isinstance(value, HnnDown):
        return {"down": jsonable(value.value)}
    if isinstance(value, WordEnd):
        return {"prefix": list(value.prefix), "period": list(value.period)}
    if isinstance(value, HnnVertex):
        return {"level": value.level, "center": jsonable(value.center)}
    if isinstance(value, TreePoint):
        return {"vertex": jsonable(value.vertex), "up": jsonable(value.up)}
    if is_dataclass(value) and not isinstance(value, type):
        return {f.name: jsonable(getattr(value, f.name)) for f in fields(value)}
    if isinstance(value, dict):
        return {str(k): jsonable(v) for k, v in sorted(value.items(), key=lambda kv: str(kv[0]))}
    if isinstance(value, (list, tuple, set, frozenset)):
        items = list(value)
        if isinstance(value, (set, frozenset)):
            items = sorted(items, key=str)
        return [jsonable(v) for v in items]
    return str(value)
