"""Lazy locally finite simplicial trees with exact arithmetic.

Three families cover everything the rest of the package needs:

* ``RegularTree(degree)`` -- the degree-regular tree, vertices addressed by
  digit words from a root.
* ``CayleyTree(rank)`` -- the Cayley tree of a free group, vertices are
  reduced words (positive letters 1..rank, negative letters are inverses).
* ``HnnTree(index)`` -- the Bass-Serre tree of an ascending HNN extension
  of index n, modeled on nested n-adic balls: a vertex is a pair
  ``(level k, center c)`` with c a rational taken in [0, n^k) whose
  denominator divides a power of n.  Each vertex has one parent (toward
  the distinguished fixed end) and n children.

Edges all have length one.  Every non-root vertex has a parent, so
geodesics resolve by climbing to the common ancestor; all quantities are
exact over ints and Fractions.

Ends are restricted to the eventually periodic ones -- the computable
dense subset of the boundary.  For the word trees an end is a canonical
(prefix, period) pair; for the HNN tree it is the distinguished upward end
or a downward end labeled by the rational it converges to n-adically.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Optional, Union

Word = tuple[int, ...]


# ---------------------------------------------------------------------------
# Ends


@dataclass(frozen=True)
class WordEnd:
    """Eventually periodic end prefix . period^infinity of a rooted word tree.

    Stored in canonical form: the period is primitive (not a proper power)
    and the prefix is shortest (no trailing letter equal to the period's
    last letter, which would allow rolling the period back).  Build through
    :func:`make_word_end` so equal infinite words compare equal.
    """

    prefix: Word
    period: Word

    def letter(self, i: int) -> int:
        if i < len(self.prefix):
            return self.prefix[i]
        return self.period[(i - len(self.prefix)) % len(self.period)]

    def head(self, n: int) -> Word:
        return tuple(self.letter(i) for i in range(n))


def _primitive_period(period: Word) -> Word:
    n = len(period)
    for d in range(1, n + 1):
        if n % d == 0 and period == period[:d] * (n // d):
            return period[:d]
    return period


def make_word_end(prefix, period) -> WordEnd:
    if not period:
        raise ValueError("end period must be nonempty")
    period = _primitive_period(tuple(period))
    prefix = tuple(prefix)
    while prefix and prefix[-1] == period[-1]:
        prefix = prefix[:-1]
        period = (period[-1],) + period[:-1]
    return WordEnd(prefix, period)


class HnnUp:
    """The distinguished fixed end of an HNN tree (levels decreasing)."""

    _instance: Optional["HnnUp"] = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "HnnUp()"

    def __eq__(self, other):
        return isinstance(other, HnnUp)

    def __hash__(self):
        return hash("HnnUp")


@dataclass(frozen=True)
class HnnDown:
    """A downward end of an HNN tree: the nested-ball limit of a rational."""

    value: Fraction

    def __init__(self, value):
        object.__setattr__(self, "value", Fraction(value))


TreeEnd = Union[WordEnd, HnnUp, HnnDown]


# ---------------------------------------------------------------------------
# n-adic helpers


def _prime_factors(n: int) -> list[int]:
    out, d, m = [], 2, n
    while d * d <= m:
        if m % d == 0:
            out.append(d)
            while m % d == 0:
                m //= d
        d += 1
    if m > 1:
        out.append(m)
    return out


def _shared_part(den: int, n: int) -> int:
    """Largest divisor of den built from primes of n."""
    g = 1
    for p in _prime_factors(n):
        while den % p == 0:
            den //= p
            g *= p
    return g


def n_valuation(x: Fraction, n: int) -> int | float:
    """Largest h such that x / n^h is n-adically integral; +inf for x = 0.

    Denominator factors coprime to n are units and are ignored.
    """
    if x == 0:
        return math.inf
    shared = _shared_part(x.denominator, n)
    w = Fraction(x.numerator, shared)
    h = 0
    if w.denominator == 1:
        v = abs(w.numerator)
        while v % n == 0:
            v //= n
            h += 1
        return h
    while w.denominator != 1:
        w *= n
        h -= 1
    return h


@dataclass(frozen=True)
class HnnVertex:
    """Ball of n-adic radius n^-level with rational center in [0, n^level)."""

    level: int
    center: Fraction


# ---------------------------------------------------------------------------
# Models


class TreeModel:
    """Shared geodesic machinery; subclasses supply the local structure."""

    def base_vertex(self):
        raise NotImplementedError

    def parent(self, v):
        raise NotImplementedError

    def level(self, v) -> int:
        raise NotImplementedError

    def children(self, v) -> list:
        raise NotImplementedError

    def end_step(self, v, end):
        """The neighbor of v on the geodesic ray from v to the end."""
        raise NotImplementedError

    def check_vertex(self, v) -> None:
        raise NotImplementedError

    def check_end(self, end) -> None:
        raise NotImplementedError

    def descriptor(self) -> dict:
        raise NotImplementedError

    # -- generic geodesics -------------------------------------------------

    def vertex_distance(self, u, v) -> int:
        a, b = u, v
        da, db = self.level(a), self.level(b)
        dist = 0
        while da > db:
            a = self.parent(a)
            da -= 1
            dist += 1
        while db > da:
            b = self.parent(b)
            db -= 1
            dist += 1
        while a != b:
            a = self.parent(a)
            b = self.parent(b)
            dist += 2
        return dist

    def vertex_path(self, u, v) -> list:
        """Vertices of the geodesic from u to v, inclusive."""
        up, down = [u], [v]
        a, b = u, v
        da, db = self.level(a), self.level(b)
        while da > db:
            a = self.parent(a)
            da -= 1
            up.append(a)
        while db > da:
            b = self.parent(b)
            db -= 1
            down.append(b)
        while a != b:
            a = self.parent(a)
            b = self.parent(b)
            up.append(a)
            down.append(b)
        down.pop()
        return up + down[::-1]

    def ray_vertices(self, v, end) -> Iterator:
        current = v
        while True:
            yield current
            current = self.end_step(current, end)


class RegularTree(TreeModel):
    """Degree-regular rooted word tree: the root has ``degree`` children,
    every other vertex one parent and ``degree - 1`` children."""

    def __init__(self, degree: int):
        if degree < 3:
            raise ValueError("regular tree needs degree >= 3 to have more than two ends")
        self.degree = degree

    def base_vertex(self) -> Word:
        return ()

    def parent(self, v: Word) -> Optional[Word]:
        return v[:-1] if v else None

    def level(self, v: Word) -> int:
        return len(v)

    def children(self, v: Word) -> list[Word]:
        width = self.degree if not v else self.degree - 1
        return [v + (i,) for i in range(width)]

    def check_vertex(self, v: Word) -> None:
        for i, letter in enumerate(v):
            width = self.degree if i == 0 else self.degree - 1
            if not 0 <= letter < width:
                raise ValueError(f"address digit {letter} out of range at position {i}")

    def check_end(self, end: TreeEnd) -> None:
        if not isinstance(end, WordEnd):
            raise ValueError("regular tree ends are word ends")
        self.check_vertex(end.head(len(end.prefix) + 2 * len(end.period)))

    def end_step(self, v: Word, end: WordEnd) -> Word:
        if end.head(len(v)) == v:
            return v + (end.letter(len(v)),)
        return v[:-1]

    def descriptor(self) -> dict:
        return {"type": "regular", "degree": self.degree}


def reduce_word(word) -> Word:
    out: list[int] = []
    for letter in word:
        if out and out[-1] == -letter:
            out.pop()
        else:
            out.append(letter)
    return tuple(out)


def invert_word(word) -> Word:
    return tuple(-x for x in reversed(word))


class CayleyTree(TreeModel):
    """Cayley tree of the free group of the given rank.

    Vertices are reduced words over letters +-1..+-rank, rooted at the
    identity; the rooted structure (parent = drop the last letter) realizes
    the word metric d(u, v) = |reduce(u^-1 v)|.
    """

    def __init__(self, rank: int):
        if rank < 1:
            raise ValueError("free group rank must be >= 1")
        self.rank = rank

    def letters(self) -> list[int]:
        return list(range(1, self.rank + 1)) + [-i for i in range(1, self.rank + 1)]

    def base_vertex(self) -> Word:
        return ()

    def parent(self, v: Word) -> Optional[Word]:
        return v[:-1] if v else None

    def level(self, v: Word) -> int:
        return len(v)

    def children(self, v: Word) -> list[Word]:
        last = v[-1] if v else None
        return [v + (x,) for x in self.letters() if last is None or x != -last]

    def check_vertex(self, v: Word) -> None:
        for i, letter in enumerate(v):
            if letter == 0 or abs(letter) > self.rank:
                raise ValueError(f"letter {letter} outside rank {self.rank}")
            if i and v[i - 1] == -letter:
                raise ValueError(f"word {v} is not reduced at position {i}")

    def check_end(self, end: TreeEnd) -> None:
        if not isinstance(end, WordEnd):
            raise ValueError("Cayley tree ends are word ends")
        self.check_vertex(end.head(len(end.prefix) + 2 * len(end.period) + 1))

    def end_step(self, v: Word, end: WordEnd) -> Word:
        if end.head(len(v)) == v:
            return v + (end.letter(len(v)),)
        return v[:-1]

    def left_multiply_vertex(self, g, v: Word) -> Word:
        return reduce_word(tuple(g) + tuple(v))

    def left_multiply_end(self, g, end: WordEnd) -> WordEnd:
        # Cancellation of g against the infinite word stops after at most
        # |g| letters, so acting on a long enough finite head is exact.
        copies = (len(g) + len(end.period)) // len(end.period) + 1
        head = tuple(end.prefix) + tuple(end.period) * copies
        return make_word_end(reduce_word(tuple(g) + head), end.period)

    def descriptor(self) -> dict:
        return {"type": "cayley", "rank": self.rank}


class HnnTree(TreeModel):
    """Oriented (n+1)-regular Bass-Serre tree of an ascending HNN extension
    of index n, realized on nested n-adic balls.

    The vertex (k, c) stands for the ball c + n^k Z_n; its parent is the
    ball one level up and its children partition it into n balls.  Levels
    are unbounded in both directions and the upward direction is the unique
    end fixed by every affine map x -> n^m x + b.
    """

    def __init__(self, index: int):
        if index < 2:
            raise ValueError("ascending HNN extensions here have index >= 2")
        self.index = index

    def base_vertex(self) -> HnnVertex:
        return HnnVertex(0, Fraction(0))

    def canonical(self, level: int, center: Fraction) -> HnnVertex:
        modulus = Fraction(self.index) ** level
        c = center - math.floor(center / modulus) * modulus
        return HnnVertex(level, c)

    def parent(self, v: HnnVertex) -> HnnVertex:
        return self.canonical(v.level - 1, v.center)

    def level(self, v: HnnVertex) -> int:
        return v.level

    def children(self, v: HnnVertex) -> list[HnnVertex]:
        step = Fraction(self.index) ** v.level
        return [HnnVertex(v.level + 1, v.center + d * step) for d in range(self.index)]

    def check_vertex(self, v: HnnVertex) -> None:
        if not isinstance(v, HnnVertex):
            raise ValueError("HNN tree vertices are (level, center) balls")
        if not 0 <= v.center < Fraction(self.index) ** v.level:
            raise ValueError(f"center {v.center} outside [0, {self.index}^{v.level})")
        if _shared_part(v.center.denominator, self.index) != v.center.denominator:
            raise ValueError(f"center {v.center} is not an {self.index}-adic rational")

    def check_end(self, end: TreeEnd) -> None:
        if not isinstance(end, (HnnUp, HnnDown)):
            raise ValueError("HNN tree ends are HnnUp or HnnDown")

    def contains_value(self, v: HnnVertex, x: Fraction) -> bool:
        return n_valuation(x - v.center, self.index) >= v.level

    def end_step(self, v: HnnVertex, end: TreeEnd) -> HnnVertex:
        if isinstance(end, HnnUp):
            return self.parent(v)
        x = end.value
        if not self.contains_value(v, x):
            return self.parent(v)
        n = self.index
        t = (x - v.center) / Fraction(n) ** v.level
        # t is n-adically integral; its residue mod n picks the child.
        digit = (t.numerator * pow(t.denominator, -1, n)) % n
        return HnnVertex(v.level + 1, v.center + digit * Fraction(n) ** v.level)

    def vertex_containing(self, x: Fraction, level: int) -> HnnVertex:
        """The ball of the given level containing the rational x."""
        n = self.index
        j = 0
        y = Fraction(x)
        while _shared_part(y.denominator, n) != 1:
            y *= n
            j += 1
        exp = level + j
        if exp <= 0:
            return self.canonical(level, Fraction(0))
        modulus = n ** exp
        m = (y.numerator * pow(y.denominator, -1, modulus)) % modulus
        return self.canonical(level, Fraction(m, n ** j))

    def affine_vertex(self, shift: int, add: Fraction, v: HnnVertex) -> HnnVertex:
        """Image of the ball under x -> n^shift x + add."""
        n = Fraction(self.index)
        return self.canonical(v.level + shift, n ** shift * v.center + add)

    def descriptor(self) -> dict:
        return {"type": "hnn", "index": self.index}


def tree_from_descriptor(desc: dict) -> TreeModel:
    kind = desc.get("type")
    if kind == "regular":
        return RegularTree(int(desc["degree"]))
    if kind == "cayley":
        return CayleyTree(int(desc["rank"]))
    if kind == "hnn":
        return HnnTree(int(desc["index"]))
    raise ValueError(f"unknown tree descriptor {desc!r}")


# ---------------------------------------------------------------------------
# Metric points: a vertex plus an offset toward its parent


@dataclass(frozen=True)
class TreePoint:
    """Point of the metric tree: ``up`` of the way from ``vertex`` toward
    its parent, with up in [0, 1).  up = 0 is the vertex itself."""

    vertex: object
    up: Fraction = Fraction(0)

    def __init__(self, vertex, up=Fraction(0)):
        up = Fraction(up)
        if not 0 <= up < 1:
            raise ValueError("edge offset must lie in [0, 1)")
        object.__setattr__(self, "vertex", vertex)
        object.__setattr__(self, "up", up)

    @property
    def at_vertex(self) -> bool:
        return self.up == 0


def _exits(model: TreeModel, p: TreePoint) -> list[tuple[object, Fraction]]:
    out = [(p.vertex, p.up)]
    if p.up > 0:
        out.append((model.parent(p.vertex), 1 - p.up))
    return out


def point_distance(model: TreeModel, p: TreePoint, q: TreePoint) -> Fraction:
    """Exact distance between two metric points."""
    if p.vertex == q.vertex:
        return abs(p.up - q.up)
    return min(
        pc + model.vertex_distance(pv, qv) + qc
        for pv, pc in _exits(model, p)
        for qv, qc in _exits(model, q)
    )


def _point_on_edge_above(model: TreeModel, lower, upper, dist_from_lower: Fraction) -> TreePoint:
    """Point on the edge between lower and its parent upper."""
    if dist_from_lower == 0:
        return TreePoint(lower)
    if dist_from_lower == 1:
        return TreePoint(upper)
    return TreePoint(lower, dist_from_lower)


def _edge_point(model: TreeModel, a, b, frac: Fraction) -> TreePoint:
    """Point at distance frac from vertex a along the edge toward vertex b."""
    if frac == 0:
        return TreePoint(a)
    if model.parent(a) == b:
        return TreePoint(a, frac)
    if model.parent(b) == a:
        return TreePoint(b, 1 - frac)
    raise ValueError("vertices are not adjacent")


def walk_to_point(model: TreeModel, start: TreePoint, target: TreePoint, t: Fraction) -> TreePoint:
    """Point at arc length t along the geodesic from start to target."""
    t = Fraction(t)
    total = point_distance(model, start, target)
    if t < 0 or t > total:
        raise ValueError(f"parameter {t} outside [0, {total}]")
    if total == 0 or t == 0:
        return start if t < total else target
    if start.vertex == target.vertex:
        sign = 1 if target.up > start.up else -1
        return TreePoint(start.vertex, start.up + sign * t)
    best = None
    for pv, pc in _exits(model, start):
        for qv, qc in _exits(model, target):
            d = pc + model.vertex_distance(pv, qv) + qc
            if best is None or d < best[0]:
                best = (d, pv, pc, qv, qc)
    _, pv, pc, qv, qc = best
    if t < pc:
        # Still on start's edge.
        if pv == start.vertex:
            return TreePoint(start.vertex, start.up - t)
        return _point_on_edge_above(model, start.vertex, pv, start.up + t)
    t = t - pc
    path = model.vertex_path(pv, qv)
    steps = len(path) - 1
    if t <= steps:
        whole = math.floor(t)
        frac = t - whole
        if frac == 0:
            return TreePoint(path[whole])
        return _edge_point(model, path[whole], path[whole + 1], frac)
    t = t - steps
    # Final partial segment from qv toward target, 0 < t <= qc.
    if qv == target.vertex:
        # Entering target's edge at the anchor and climbing toward target.
        return TreePoint(target.vertex, t)
    # qv is target's parent; descending, the up-coordinate falls from 1.
    return _point_on_edge_above(model, target.vertex, qv, 1 - t)


def ray_point_at(model: TreeModel, base: TreePoint, end: TreeEnd, t: Fraction) -> TreePoint:
    """Point at arc length t >= 0 along the geodesic ray from base to an end."""
    t = Fraction(t)
    if t < 0:
        raise ValueError("ray parameter must be nonnegative")
    current = base.vertex
    if base.up > 0:
        first = model.end_step(base.vertex, end)
        if first == model.parent(base.vertex):
            gap = 1 - base.up
            if t < gap:
                return TreePoint(base.vertex, base.up + t)
            t -= gap
            current = model.parent(base.vertex)
        else:
            if t <= base.up:
                return TreePoint(base.vertex, base.up - t)
            t -= base.up
    while t >= 1:
        current = model.end_step(current, end)
        t -= 1
    if t == 0:
        return TreePoint(current)
    nxt = model.end_step(current, end)
    return _edge_point(model, current, nxt, t)
