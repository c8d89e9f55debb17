"""The character sphere: rays of additive characters, hemispheres, m-values.

A character of a group G with fixed free-abelianized rank k is stored as an
exact rational vector of length k (coordinates with respect to a chosen
basis of Hom(G, R)).  The character sphere S(G) is the set of nonzero
characters modulo positive scaling; a point of it is stored as the unique
primitive integer vector on the ray.  Everything in this module is exact:
hemisphere membership is a strict inequality and floating point would make
it undecidable on the boundary.

All values are immutable and all operations are pure functions, safe to
evaluate concurrently; the one internal memo table has value semantics.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Iterable, Mapping, Optional, Sequence, Union

from .errors import DimensionMismatch, NotTranslationAction, ZeroCharacter
from .exactlp import strictly_representable_lp

RationalLike = Union[int, Fraction, float, str]


def _frac(x: RationalLike) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


@dataclass(frozen=True)
class Character:
    """An additive character G -> R in coordinates, as exact rationals."""

    coords: tuple[Fraction, ...]

    def __init__(self, coords: Iterable[RationalLike]):
        object.__setattr__(self, "coords", tuple(_frac(c) for c in coords))

    @property
    def k(self) -> int:
        return len(self.coords)

    @property
    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coords)

    def __add__(self, other: "Character") -> "Character":
        if self.k != other.k:
            raise DimensionMismatch(f"characters of rank {self.k} and {other.k}")
        return Character(a + b for a, b in zip(self.coords, other.coords))

    def __neg__(self) -> "Character":
        return Character(-c for c in self.coords)

    def scaled(self, factor: RationalLike) -> "Character":
        return Character(_frac(factor) * c for c in self.coords)

    @staticmethod
    def zero(k: int) -> "Character":
        return Character([Fraction(0)] * k)


@dataclass(frozen=True)
class SpherePoint:
    """A point of S(G): the primitive integer vector on a ray of characters.

    Two sphere points are equal iff their vectors are identical; the sign of
    the vector is the orientation of the ray (antipodes are distinct).
    """

    primitive: tuple[int, ...]

    def __post_init__(self):
        vec = tuple(self.primitive)
        if any(not isinstance(c, int) or isinstance(c, bool) for c in vec):
            raise ValueError(f"sphere points carry integer vectors, got {vec!r}")
        object.__setattr__(self, "primitive", vec)
        if not vec or all(c == 0 for c in vec):
            raise ZeroCharacter("sphere points come from nonzero characters")
        g = 0
        for c in vec:
            g = gcd(g, abs(c))
        if g != 1:
            raise ValueError(f"vector {vec} is not primitive (gcd {g})")

    @property
    def k(self) -> int:
        return len(self.primitive)

    def antipode(self) -> "SpherePoint":
        return SpherePoint(tuple(-c for c in self.primitive))

    def character(self) -> Character:
        return Character(self.primitive)


def normalize_ray(chi: Character) -> SpherePoint:
    """The primitive integer vector on the ray of positive multiples of chi.

    Raises ZeroCharacter for chi = 0.
    """
    if chi.is_zero:
        raise ZeroCharacter("the zero character has no ray")
    denom_lcm = 1
    for c in chi.coords:
        denom_lcm = denom_lcm * c.denominator // gcd(denom_lcm, c.denominator)
    ints = [int(c * denom_lcm) for c in chi.coords]
    g = 0
    for v in ints:
        g = gcd(g, abs(v))
    return SpherePoint(tuple(v // g for v in ints))


@dataclass(frozen=True)
class OpenHemisphere:
    """The open hemisphere of rays pairing strictly positively with a normal."""

    normal: SpherePoint

    @property
    def k(self) -> int:
        return self.normal.k

    def contains_character(self, chi: Character) -> bool:
        if chi.k != self.k:
            raise DimensionMismatch(f"hemisphere in rank {self.k}, character in rank {chi.k}")
        return sum(n * c for n, c in zip(self.normal.primitive, chi.coords)) > 0

    def contains(self, p: SpherePoint) -> bool:
        if p.k != self.k:
            raise DimensionMismatch(f"hemisphere in rank {self.k}, point in rank {p.k}")
        return sum(n * c for n, c in zip(self.normal.primitive, p.primitive)) > 0


MODE_HEMISPHERES = "hemispheres"
MODE_FINITE_COMPLEMENT = "finite_complement"


@dataclass(frozen=True)
class PolyhedralSet:
    """A finite union of finite intersections of open hemispheres on S(G).

    An empty clause list denotes the empty set; a clause with zero
    hemispheres denotes all of S(G).  The alternative ``finite_complement``
    mode describes the set as everything except a finite list of rational
    points (the shape the complement of the first invariant takes for
    metabelian groups of finite Prufer rank).
    """

    k: int
    clauses: tuple[tuple[OpenHemisphere, ...], ...] = ()
    complement_points: Optional[frozenset[SpherePoint]] = None

    @property
    def mode(self) -> str:
        return MODE_HEMISPHERES if self.complement_points is None else MODE_FINITE_COMPLEMENT

    @staticmethod
    def empty(k: int) -> "PolyhedralSet":
        return PolyhedralSet(k, ())

    @staticmethod
    def full(k: int) -> "PolyhedralSet":
        return PolyhedralSet(k, ((),))

    @staticmethod
    def from_clauses(k: int, clauses: Iterable[Iterable[OpenHemisphere]]) -> "PolyhedralSet":
        cl = tuple(tuple(c) for c in clauses)
        for clause in cl:
            for h in clause:
                if h.k != k:
                    raise DimensionMismatch(f"hemisphere rank {h.k} in a rank-{k} set")
        return PolyhedralSet(k, cl)

    @staticmethod
    def complement_of_points(k: int, points: Iterable[SpherePoint]) -> "PolyhedralSet":
        pts = frozenset(points)
        for p in pts:
            if p.k != k:
                raise DimensionMismatch(f"point rank {p.k} in a rank-{k} set")
        return PolyhedralSet(k, (), pts)

    def contains(self, p: SpherePoint) -> bool:
        return polyhedral_contains(self, p)

    def contains_character(self, chi: Character) -> bool:
        """Membership of the ray [chi]; exact, raises ZeroCharacter on chi = 0."""
        return polyhedral_contains(self, normalize_ray(chi))

    def to_json(self) -> dict:
        if self.mode == MODE_FINITE_COMPLEMENT:
            return {
                "k": self.k,
                "complement_points": sorted(list(p.primitive) for p in self.complement_points),
            }
        return {
            "k": self.k,
            "clauses": [[list(h.normal.primitive) for h in clause] for clause in self.clauses],
        }

    @staticmethod
    def from_json(data: Mapping) -> "PolyhedralSet":
        k = int(data["k"])
        if "complement_points" in data:
            pts = [SpherePoint(tuple(int(c) for c in v)) for v in data["complement_points"]]
            return PolyhedralSet.complement_of_points(k, pts)
        clauses = [
            tuple(OpenHemisphere(SpherePoint(tuple(int(c) for c in normal))) for normal in clause)
            for clause in data.get("clauses", [])
        ]
        return PolyhedralSet.from_clauses(k, clauses)


def polyhedral_contains(P: PolyhedralSet, p: SpherePoint) -> bool:
    """Exact membership: p satisfies every strict inequality of some clause."""
    if p.k != P.k:
        raise DimensionMismatch(f"set in rank {P.k}, point in rank {p.k}")
    if P.mode == MODE_FINITE_COMPLEMENT:
        return p not in P.complement_points
    for clause in P.clauses:
        if all(h.contains(p) for h in clause):
            return True
    return False


INF = math.inf


def minimal_ray_count(
    A: Iterable[SpherePoint],
    chi: Character,
    representable=strictly_representable_lp,
) -> int | float:
    """Least number of distinct rays of A - {[chi]} whose strictly positive
    conic combination equals chi, or infinity if there is none.

    The zero character is allowed; its representation must be nontrivial
    (at least one ray, all coefficients > 0).  Subsets are tried in
    increasing size; each feasibility question "chi = sum lam_i v_i with
    all lam_i > 0" is decided exactly by the supplied routine (default:
    rational simplex maximizing the minimum coefficient).
    """
    pts = sorted(set(A), key=lambda s: s.primitive)
    if not chi.is_zero:
        ray = normalize_ray(chi)
        pts = [p for p in pts if p != ray]
    for p in pts:
        if p.k != chi.k:
            raise DimensionMismatch(f"point rank {p.k}, character rank {chi.k}")
    key = (tuple(p.primitive for p in pts), chi.coords, representable)
    hit = _RAY_COUNT_CACHE.get(key)
    if hit is not None:
        return hit
    target = chi.coords
    result = INF
    for size in range(1, len(pts) + 1):
        found = False
        for subset in itertools.combinations(pts, size):
            vectors = [tuple(Fraction(c) for c in s.primitive) for s in subset]
            if representable(vectors, target):
                result = size
                found = True
                break
        if found:
            break
    if len(_RAY_COUNT_CACHE) > 4096:
        _RAY_COUNT_CACHE.clear()
    _RAY_COUNT_CACHE[key] = result
    return result


# Memoization preserves the functional contract (immutable keys, value
# semantics) and keeps the piecewise formulas cheap when they reuse the
# same complement at every degree.
_RAY_COUNT_CACHE: dict = {}


@dataclass(frozen=True)
class MValue:
    """sup of the k for which chi is *not* a sum of k characters with rays in
    A - {[chi]}; infinite when no representation exists at all.

    Equals minimal_ray_count - 1: a representation by r distinct rays gives
    one with any number >= r of summands (split a summand into positive
    multiples of itself), and none with fewer, so exactly the k < r fail.
    """

    value: int | float

    def __post_init__(self):
        if self.value != INF and (not isinstance(self.value, int) or self.value < 1):
            raise ValueError(f"finite m-values are integers >= 1, got {self.value}")

    @property
    def is_finite(self) -> bool:
        return self.value != INF

    def __le__(self, other):
        return self.value <= (other.value if isinstance(other, MValue) else other)

    def __lt__(self, other):
        return self.value < (other.value if isinstance(other, MValue) else other)


def m_value(
    A: Iterable[SpherePoint],
    chi: Character,
    representable=strictly_representable_lp,
) -> MValue:
    r = minimal_ray_count(A, chi, representable=representable)
    return MValue(INF if r == INF else r - 1)


# ---------------------------------------------------------------------------
# Translation actions on Euclidean k-space: the join description of the
# invariant and the map mu sending a boundary direction to the ray of the
# induced character.


def _extract_translation_vectors(rho) -> list[tuple[Fraction, ...]]:
    """Exact translation vectors of rho, which is either a GroupAction by
    Euclidean translations or a mapping name -> vector.

    Binary floats convert to Fraction without loss, so float input stays
    exact.  Raises NotTranslationAction when a generator carries a
    nontrivial rotation part.
    """
    if hasattr(rho, "translation_vectors"):
        vectors = rho.translation_vectors()
    elif isinstance(rho, Mapping):
        vectors = rho
    else:
        raise NotTranslationAction(f"cannot read translation vectors from {type(rho).__name__}")
    out = []
    for name in sorted(vectors):
        out.append(tuple(_frac(c) for c in vectors[name]))
    return out


def _rational_row_space_basis(vectors: Sequence[tuple[Fraction, ...]], k: int) -> list[tuple[Fraction, ...]]:
    """Reduced row-echelon basis of the span, exact."""
    rows = [list(v) for v in vectors if any(c != 0 for c in v)]
    basis: list[list[Fraction]] = []
    pivots: list[int] = []
    for row in rows:
        row = row[:]
        for b, p in zip(basis, pivots):
            if row[p] != 0:
                factor = row[p]
                row = [a - factor * c for a, c in zip(row, b)]
        piv = next((i for i, c in enumerate(row) if c != 0), None)
        if piv is None:
            continue
        row = [c / row[piv] for c in row]
        basis.append(row)
        pivots.append(piv)
    # Back-substitute for a clean reduced form.
    for i, p in enumerate(pivots):
        for j in range(len(basis)):
            if j != i and basis[j][p] != 0:
                factor = basis[j][p]
                basis[j] = [a - factor * c for a, c in zip(basis[j], basis[i])]
    order = sorted(range(len(basis)), key=lambda i: pivots[i])
    return [tuple(basis[i]) for i in order]


def _solve_exact(matrix: list[list[Fraction]], rhs: list[Fraction]) -> list[Fraction]:
    """Solve a nonsingular rational linear system by Gaussian elimination."""
    n = len(matrix)
    aug = [row[:] + [rhs[i]] for i, row in enumerate(matrix)]
    for col in range(n):
        piv = next(r for r in range(col, n) if aug[r][col] != 0)
        aug[col], aug[piv] = aug[piv], aug[col]
        scale = aug[col][col]
        aug[col] = [c / scale for c in aug[col]]
        for r in range(n):
            if r != col and aug[r][col] != 0:
                factor = aug[r][col]
                aug[r] = [a - factor * b for a, b in zip(aug[r], aug[col])]
    return [aug[i][n] for i in range(n)]


def _orthogonal_complement_basis(span: Sequence[tuple[Fraction, ...]], k: int) -> list[tuple[Fraction, ...]]:
    """Rational basis of the orthogonal complement (standard inner product)."""
    if not span:
        return [tuple(Fraction(int(i == j)) for j in range(k)) for i in range(k)]
    pivots = [next(i for i, c in enumerate(row) if c != 0) for row in span]
    free = [i for i in range(k) if i not in pivots]
    out = []
    for f in free:
        # Solve <w, row> = 0 for all rows with w[f] = 1, w supported on pivots + f.
        w = [Fraction(0)] * k
        w[f] = Fraction(1)
        for row, p in zip(span, pivots):
            w[p] = -row[f]
        out.append(tuple(w))
    return out


@dataclass(frozen=True)
class EuclideanSigmaDescription:
    """The invariant of a Euclidean translation action, described via the
    join decomposition of the boundary sphere.

    N is the span of the translation vectors, N' its orthogonal complement;
    the boundary sphere is the spherical join of the unit spheres of N and
    N'.  A direction e belongs to the invariant iff it is not purely in N'
    and the N-component's ray passes the membership test of the given
    sphere set, equivalently iff mu(e) is nonzero and lies in the set.
    """

    k: int
    degree: int
    vectors: tuple[tuple[Fraction, ...], ...]
    sigma_g: PolyhedralSet
    span_basis: tuple[tuple[Fraction, ...], ...] = field(default=())
    complement_basis: tuple[tuple[Fraction, ...], ...] = field(default=())

    def character_at(self, direction: Sequence[RationalLike]) -> Character:
        """The character g -> <v_g, e> of the direction e (any nonzero scale)."""
        e = [_frac(c) for c in direction]
        if len(e) != self.k:
            raise DimensionMismatch(f"direction rank {len(e)}, space rank {self.k}")
        return Character(sum(v[i] * e[i] for i in range(self.k)) for v in self.vectors)

    def mu(self, direction: Sequence[RationalLike]) -> Optional[SpherePoint]:
        """The ray of the induced character, or None for the zero character.

        None encodes the basepoint 0 adjoined to S(G); directions in the
        boundary sphere of N' land there.
        """
        chi = self.character_at(direction)
        if chi.is_zero:
            return None
        return normalize_ray(chi)

    def contains(self, direction: Sequence[RationalLike]) -> bool:
        mu = self.mu(direction)
        return mu is not None and polyhedral_contains(self.sigma_g, mu)

    def join_components(
        self, direction: Sequence[RationalLike]
    ) -> tuple[Optional[tuple[Fraction, ...]], Optional[tuple[Fraction, ...]]]:
        """Split a direction into its N-part and N'-part (unnormalized).

        Returns (u, w) with u the orthogonal projection onto N and w the
        remainder; either may be None when zero.  Used to check the join
        description against the pointwise character computation.
        """
        e = [_frac(c) for c in direction]
        if len(e) != self.k:
            raise DimensionMismatch(f"direction rank {len(e)}, space rank {self.k}")
        basis = [list(b) for b in self.span_basis]
        if basis:
            # Exact orthogonal projection: solve (B B^T) x = B e, u = B^T x.
            r = len(basis)
            gram = [[sum(a * b for a, b in zip(basis[i], basis[j])) for j in range(r)] for i in range(r)]
            rhs = [sum(a * b for a, b in zip(basis[i], e)) for i in range(r)]
            x = _solve_exact(gram, rhs)
            u = [sum(x[i] * basis[i][t] for i in range(r)) for t in range(self.k)]
        else:
            u = [Fraction(0)] * self.k
        w = [a - c for a, c in zip(e, u)]
        u_t = tuple(u) if any(c != 0 for c in u) else None
        w_t = tuple(w) if any(c != 0 for c in w) else None
        return u_t, w_t

    def contains_by_join(self, direction: Sequence[RationalLike]) -> bool:
        """Join-formula membership: drop the pure-N' subsphere, test the
        N-component's induced ray.  Agrees with contains() identically."""
        u, _ = self.join_components(direction)
        if u is None:
            return False
        mu = self.mu(u)
        return mu is not None and polyhedral_contains(self.sigma_g, mu)

    def describe(self) -> dict:
        n_dim = len(self.span_basis)
        return {
            "k": self.k,
            "degree": self.degree,
            "span_dimension": n_dim,
            "complement_dimension": self.k - n_dim,
            "form": (
                "empty"
                if n_dim == 0
                else f"join(sigma_restricted_to_S^{n_dim - 1}, S^{self.k - n_dim - 1}) minus S^{self.k - n_dim - 1}"
            ),
            "span_basis": [[str(c) for c in b] for b in self.span_basis],
            "complement_basis": [[str(c) for c in b] for b in self.complement_basis],
        }


def euclidean_join_decomposition(rho, sigma_g: PolyhedralSet, n: int) -> EuclideanSigmaDescription:
    """Describe the degree-n invariant of a Euclidean translation action.

    rho acts on E^k by translations (a GroupAction or a mapping
    name -> translation vector); sigma_g describes the group invariant on
    S(G) in coordinates indexed by the sorted generator names.  When every
    translation vector is zero the span N is trivial, the description is
    empty and mu is identically zero.
    """
    vectors = _extract_translation_vectors(rho)
    if not vectors:
        raise NotTranslationAction("action has no generators")
    k = len(vectors[0])
    for v in vectors:
        if len(v) != k:
            raise NotTranslationAction("translation vectors of mixed dimension")
    span = _rational_row_space_basis(vectors, k)
    comp = _orthogonal_complement_basis(span, k)
    return EuclideanSigmaDescription(
        k=k,
        degree=n,
        vectors=tuple(vectors),
        sigma_g=sigma_g,
        span_basis=tuple(span),
        complement_basis=tuple(comp),
    )


def points_to_json(k: int, points: Iterable[SpherePoint]) -> dict:
    return {"k": k, "points": sorted(list(p.primitive) for p in points)}


def points_from_json(data: Mapping) -> tuple[int, list[SpherePoint]]:
    k = int(data["k"])
    pts = [SpherePoint(tuple(int(c) for c in v)) for v in data["points"]]
    for p in pts:
        if p.k != k:
            raise DimensionMismatch(f"point rank {p.k} in rank-{k} data")
    return k, pts
