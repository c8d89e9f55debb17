"""Isometric group actions on the model spaces and their boundary calculus.

Covers: evaluation of generator words on points and boundary points, the
classification of single isometries, endpoint characters of actions fixing
a boundary point, the Busemann cocycle, the shift calculus for finite
control configurations (shift, guaranteed shift, norms, contraction flag),
a desk-scale cocompactness decision, and two numeric audits (the local
Busemann comparison bound and the chord-versus-angle estimate).

Isometries are exact wherever the underlying space is exact: tree
isometries are deck transformations computed over ints and Fractions, and
Moebius maps with rational entries act exactly on rational boundary
points.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence, Union

from . import spaces
from .errors import (
    EmptyConfiguration,
    EndNotFixed,
    NotClosed,
    NotTranslationAction,
    UnknownGenerator,
    UnsupportedNumberForm,
    WrongSpace,
)
from .spaces import (
    EDirection,
    EuclideanSpace,
    GeneralizedRay,
    H2_INFINITY,
    HyperbolicPlane,
    ModelSpace,
    TreeSpace,
    angular_distance,
    busemann,
    distance,
    ray_from,
)
from .trees import (
    CayleyTree,
    HnnDown,
    HnnTree,
    HnnUp,
    HnnVertex,
    TreePoint,
    WordEnd,
    invert_word,
    make_word_end,
    n_valuation,
    reduce_word,
)

GLOBAL_TOL = spaces.GLOBAL_TOL


# ---------------------------------------------------------------------------
# Isometries


@dataclass(frozen=True)
class EuclideanIsometry:
    """p -> Q p + v with Q orthogonal (within 1e-9)."""

    matrix: tuple
    translation: tuple

    def __init__(self, matrix, translation):
        m = tuple(tuple(float(x) for x in row) for row in matrix)
        v = tuple(float(x) for x in translation)
        k = len(v)
        if len(m) != k or any(len(row) != k for row in m):
            raise ValueError("matrix and translation dimensions disagree")
        for i in range(k):
            for j in range(k):
                gram = sum(m[r][i] * m[r][j] for r in range(k))
                if abs(gram - (1.0 if i == j else 0.0)) > 1e-9:
                    raise ValueError("matrix is not orthogonal within 1e-9")
        object.__setattr__(self, "matrix", m)
        object.__setattr__(self, "translation", v)

    @staticmethod
    def pure_translation(vector) -> "EuclideanIsometry":
        v = tuple(float(x) for x in vector)
        k = len(v)
        eye = tuple(tuple(1.0 if i == j else 0.0 for j in range(k)) for i in range(k))
        return EuclideanIsometry(eye, v)

    @property
    def is_translation(self) -> bool:
        k = len(self.translation)
        return all(
            self.matrix[i][j] == (1.0 if i == j else 0.0) for i in range(k) for j in range(k)
        )

    def apply(self, p):
        return tuple(
            sum(self.matrix[i][j] * p[j] for j in range(len(p))) + self.translation[i]
            for i in range(len(p))
        )

    def boundary(self, e: EDirection) -> EDirection:
        u = e.vector
        w = tuple(sum(self.matrix[i][j] * u[j] for j in range(len(u))) for i in range(len(u)))
        return EDirection(spaces.direction(w))

    def compose(self, other: "EuclideanIsometry") -> "EuclideanIsometry":
        k = len(self.translation)
        m = tuple(
            tuple(sum(self.matrix[i][r] * other.matrix[r][j] for r in range(k)) for j in range(k))
            for i in range(k)
        )
        v = self.apply(other.translation)
        return EuclideanIsometry(m, v)

    def inverse(self) -> "EuclideanIsometry":
        k = len(self.translation)
        mt = tuple(tuple(self.matrix[j][i] for j in range(k)) for i in range(k))
        v = tuple(-sum(mt[i][j] * self.translation[j] for j in range(k)) for i in range(k))
        return EuclideanIsometry(mt, v)


def _num(x):
    """Normalize a matrix entry: exact Fraction for int/Fraction/str input,
    float otherwise."""
    if isinstance(x, (int, Fraction)):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    return float(x)


@dataclass(frozen=True)
class MoebiusIsometry:
    """Real 2x2 matrix of determinant one acting on the upper half-plane by
    fractional linear maps.  Rational entries act exactly on rational
    boundary points."""

    a: object
    b: object
    c: object
    d: object

    def __init__(self, a, b, c, d):
        a, b, c, d = _num(a), _num(b), _num(c), _num(d)
        det = a * d - b * c
        exact = all(isinstance(x, Fraction) for x in (a, b, c, d))
        if exact:
            if det != 1:
                raise ValueError(f"determinant {det} != 1")
        elif abs(float(det) - 1.0) > 1e-12:
            raise ValueError(f"determinant {det} != 1 within 1e-12")
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "c", c)
        object.__setattr__(self, "d", d)

    def apply(self, z: complex) -> complex:
        a, b, c, d = (float(x) for x in (self.a, self.b, self.c, self.d))
        return (a * z + b) / (c * z + d)

    def boundary(self, xi):
        a, b, c, d = self.a, self.b, self.c, self.d
        if xi == H2_INFINITY:
            if c == 0:
                return H2_INFINITY
            return a / c
        num = a * xi + b
        den = c * xi + d
        if den == 0:
            return H2_INFINITY
        return num / den

    def compose(self, o: "MoebiusIsometry") -> "MoebiusIsometry":
        return MoebiusIsometry(
            self.a * o.a + self.b * o.c,
            self.a * o.b + self.b * o.d,
            self.c * o.a + self.d * o.c,
            self.c * o.b + self.d * o.d,
        )

    def inverse(self) -> "MoebiusIsometry":
        return MoebiusIsometry(self.d, -self.b, -self.c, self.a)

    def trace(self) -> float:
        return float(self.a + self.d)


@dataclass(frozen=True)
class CayleyIsometry:
    """Left multiplication by a reduced word on the Cayley tree of a free
    group."""

    word: tuple

    def __init__(self, word):
        object.__setattr__(self, "word", reduce_word(tuple(word)))

    def apply_vertex(self, model: CayleyTree, v):
        return model.left_multiply_vertex(self.word, v)

    def apply(self, model: CayleyTree, p: TreePoint) -> TreePoint:
        gv = self.apply_vertex(model, p.vertex)
        if p.up == 0:
            return TreePoint(gv)
        gparent = self.apply_vertex(model, model.parent(p.vertex))
        # Left multiplication can flip which endpoint of the edge is deeper.
        if model.parent(gv) == gparent:
            return TreePoint(gv, p.up)
        return TreePoint(gparent, 1 - p.up)

    def boundary(self, model: CayleyTree, end: WordEnd) -> WordEnd:
        return model.left_multiply_end(self.word, end)

    def compose(self, o: "CayleyIsometry") -> "CayleyIsometry":
        return CayleyIsometry(self.word + o.word)

    def inverse(self) -> "CayleyIsometry":
        return CayleyIsometry(invert_word(self.word))


@dataclass(frozen=True)
class HnnIsometry:
    """Affine deck transformation x -> n^shift x + add of the Bass-Serre
    tree of an ascending HNN extension of index n."""

    index: int
    shift: int
    add: Fraction

    def __init__(self, index: int, shift: int, add):
        object.__setattr__(self, "index", int(index))
        object.__setattr__(self, "shift", int(shift))
        object.__setattr__(self, "add", Fraction(add))

    def apply_vertex(self, model: HnnTree, v: HnnVertex) -> HnnVertex:
        return model.affine_vertex(self.shift, self.add, v)

    def apply(self, model: HnnTree, p: TreePoint) -> TreePoint:
        # Affine maps preserve the parent direction, so offsets carry over.
        return TreePoint(self.apply_vertex(model, p.vertex), p.up)

    def boundary(self, model: HnnTree, end):
        if isinstance(end, HnnUp):
            return HnnUp()
        n = Fraction(self.index)
        return HnnDown(n ** self.shift * end.value + self.add)

    def compose(self, o: "HnnIsometry") -> "HnnIsometry":
        n = Fraction(self.index)
        return HnnIsometry(self.index, self.shift + o.shift, n ** self.shift * o.add + self.add)

    def inverse(self) -> "HnnIsometry":
        n = Fraction(self.index)
        return HnnIsometry(self.index, -self.shift, -(n ** (-self.shift)) * self.add)


Isometry = Union[EuclideanIsometry, MoebiusIsometry, CayleyIsometry, HnnIsometry]


def _apply_isometry(space: ModelSpace, iso: Isometry, p):
    if isinstance(space, EuclideanSpace):
        return iso.apply(space.check_point(p))
    if isinstance(space, HyperbolicPlane):
        return iso.apply(space.check_point(p))
    if isinstance(space, TreeSpace):
        return iso.apply(space.model, space.check_point(p))
    raise WrongSpace(f"unknown space {space!r}")


def _apply_boundary(space: ModelSpace, iso: Isometry, e):
    if isinstance(space, EuclideanSpace):
        return iso.boundary(space.check_boundary(e))
    if isinstance(space, HyperbolicPlane):
        return iso.boundary(space.check_boundary(e))
    if isinstance(space, TreeSpace):
        return iso.boundary(space.model, space.check_boundary(e))
    raise WrongSpace(f"unknown space {space!r}")


def _identity_isometry(space: ModelSpace) -> Isometry:
    if isinstance(space, EuclideanSpace):
        return EuclideanIsometry.pure_translation((0.0,) * space.k)
    if isinstance(space, HyperbolicPlane):
        return MoebiusIsometry(1, 0, 0, 1)
    if isinstance(space, TreeSpace):
        if isinstance(space.model, CayleyTree):
            return CayleyIsometry(())
        if isinstance(space.model, HnnTree):
            return HnnIsometry(space.model.index, 0, 0)
    raise WrongSpace(f"no isometries implemented for {space!r}")


def _check_isometry_kind(space: ModelSpace, iso: Isometry) -> None:
    ok = (
        (isinstance(space, EuclideanSpace) and isinstance(iso, EuclideanIsometry))
        or (isinstance(space, HyperbolicPlane) and isinstance(iso, MoebiusIsometry))
        or (
            isinstance(space, TreeSpace)
            and (
                (isinstance(space.model, CayleyTree) and isinstance(iso, CayleyIsometry))
                or (isinstance(space.model, HnnTree) and isinstance(iso, HnnIsometry))
            )
        )
    )
    if not ok:
        raise WrongSpace(f"{type(iso).__name__} does not act on {space.name}")


# ---------------------------------------------------------------------------
# Group actions


class GroupAction:
    """Named generators mapped to isometries of one model space.

    Words are strings over single-character generator names; an uppercase
    letter is the inverse of the corresponding lowercase generator.  Each
    generator is checked to preserve distances on a seeded sample of point
    pairs at construction (exact on trees, 1e-9 otherwise).
    """

    def __init__(self, space: ModelSpace, generators: Mapping[str, Isometry], check: bool = True):
        self.space = space
        self.generators = dict(generators)
        for name, iso in self.generators.items():
            if len(name) != 1 or not name.islower():
                raise ValueError(f"generator names are single lowercase characters, got {name!r}")
            _check_isometry_kind(space, iso)
        if check:
            self._check_distance_preservation()

    def _check_distance_preservation(self):
        pts = spaces.sample_points_near(self.space, self.space.origin(), 4, radius=2.0, seed=1789)
        tol = 0 if isinstance(self.space, TreeSpace) else GLOBAL_TOL
        for name, iso in self.generators.items():
            for p, q in itertools.combinations(pts, 2):
                before = distance(self.space, p, q)
                after = distance(
                    self.space, _apply_isometry(self.space, iso, p), _apply_isometry(self.space, iso, q)
                )
                if abs(after - before) > tol:
                    raise ValueError(
                        f"generator {name!r} distorts distances: {before} -> {after}"
                    )

    # -- constructors ------------------------------------------------------

    @staticmethod
    def euclidean_translations(k: int, vectors: Mapping[str, Sequence]) -> "GroupAction":
        space = EuclideanSpace(k)
        gens = {name: EuclideanIsometry.pure_translation(v) for name, v in vectors.items()}
        return GroupAction(space, gens)

    @staticmethod
    def free_group(rank: int) -> "GroupAction":
        """The free group acting on its own Cayley tree by left translation."""
        space = TreeSpace(CayleyTree(rank))
        names = "abcdefghijklmnopqrstuvwxyz"[:rank]
        gens = {names[i]: CayleyIsometry((i + 1,)) for i in range(rank)}
        return GroupAction(space, gens)

    @staticmethod
    def cyclic_on_cayley_tree(rank: int, word) -> "GroupAction":
        """The cyclic group generated by one word of the free group."""
        space = TreeSpace(CayleyTree(rank))
        return GroupAction(space, {"h": CayleyIsometry(word)})

    @staticmethod
    def ascending_hnn(index: int) -> "GroupAction":
        """The ascending HNN extension of index n on its Bass-Serre tree:
        the base generator fixes the origin ball, the stable letter moves
        one level away from the fixed upward end."""
        space = TreeSpace(HnnTree(index))
        gens = {
            "a": HnnIsometry(index, 0, 1),
            "t": HnnIsometry(index, 1, 0),
        }
        return GroupAction(space, gens)

    @staticmethod
    def moebius(generators: Mapping[str, Sequence[Sequence]]) -> "GroupAction":
        space = HyperbolicPlane()
        gens = {
            name: MoebiusIsometry(m[0][0], m[0][1], m[1][0], m[1][1])
            for name, m in generators.items()
        }
        return GroupAction(space, gens)

    # -- words ---------------------------------------------------------------

    def letters(self, word: str) -> list[Isometry]:
        out = []
        for ch in word:
            if ch.isspace():
                continue
            lower = ch.lower()
            if lower not in self.generators:
                raise UnknownGenerator(f"letter {ch!r} is not a generator")
            iso = self.generators[lower]
            out.append(iso.inverse() if ch.isupper() else iso)
        return out

    def word_isometry(self, word: str) -> Isometry:
        result = _identity_isometry(self.space)
        for iso in self.letters(word):
            result = result.compose(iso)
        return result

    def apply(self, word: str, p):
        """Evaluate the word (leftmost letter acts last) on a point."""
        for iso in reversed(self.letters(word)):
            p = _apply_isometry(self.space, iso, p)
        return p

    def boundary_apply(self, word: str, e):
        for iso in reversed(self.letters(word)):
            e = _apply_boundary(self.space, iso, e)
        return e

    def translation_vectors(self) -> dict[str, tuple[Fraction, ...]]:
        """Exact translation vectors of a Euclidean translation action."""
        if not isinstance(self.space, EuclideanSpace):
            raise NotTranslationAction(f"action is on {self.space.name}, not Euclidean space")
        out = {}
        for name, iso in self.generators.items():
            if not iso.is_translation:
                raise NotTranslationAction(f"generator {name!r} has a nontrivial rotation part")
            out[name] = tuple(Fraction(c) for c in iso.translation)
        return out

    def to_json(self) -> dict:
        return {
            "space": self.space.to_json(),
            "generators": {name: isometry_to_json(iso) for name, iso in sorted(self.generators.items())},
        }


def isometry_to_json(iso: Isometry) -> dict:
    if isinstance(iso, EuclideanIsometry):
        return {"matrix": [list(r) for r in iso.matrix], "translation": list(iso.translation)}
    if isinstance(iso, MoebiusIsometry):
        return {"matrix": [[str(iso.a), str(iso.b)], [str(iso.c), str(iso.d)]]}
    if isinstance(iso, CayleyIsometry):
        return {"word": list(iso.word)}
    if isinstance(iso, HnnIsometry):
        return {"shift": iso.shift, "add": str(iso.add)}
    raise TypeError(f"not an isometry: {iso!r}")


def action_from_json(data: Mapping) -> GroupAction:
    space = spaces.space_from_json(data["space"])
    gens = {}
    for name, iso in data["generators"].items():
        if isinstance(space, EuclideanSpace):
            gens[name] = EuclideanIsometry(iso["matrix"], iso["translation"])
        elif isinstance(space, HyperbolicPlane):
            m = iso["matrix"]
            gens[name] = MoebiusIsometry(m[0][0], m[0][1], m[1][0], m[1][1])
        elif isinstance(space, TreeSpace) and isinstance(space.model, CayleyTree):
            gens[name] = CayleyIsometry(tuple(iso["word"]))
        elif isinstance(space, TreeSpace) and isinstance(space.model, HnnTree):
            gens[name] = HnnIsometry(space.model.index, iso["shift"], Fraction(iso["add"]))
        else:
            raise WrongSpace(f"no isometries implemented on {space.name}")
    return GroupAction(space, gens)


# ---------------------------------------------------------------------------
# Classification of single isometries


@dataclass(frozen=True)
class IsometryClass:
    """kind is identity / elliptic / parabolic / hyperbolic; hyperbolic
    elements carry their translation length and axis ends (attracting
    first), elliptic tree elements a fixed vertex witness."""

    kind: str
    translation_length: object = 0
    axis_ends: tuple = ()
    fixed_vertex: object = None


def classify_isometry(action: GroupAction, word: str) -> IsometryClass:
    """Trichotomy for one element: elliptic / parabolic / hyperbolic on H2
    by the trace; elliptic (fixes a vertex) or hyperbolic (translates an
    axis) on trees, computed in closed form from the reduced word or the
    affine normal form."""
    iso = action.word_isometry(word)
    space = action.space
    if isinstance(space, HyperbolicPlane):
        return _classify_moebius(iso)
    if isinstance(space, TreeSpace):
        if isinstance(iso, CayleyIsometry):
            return _classify_cayley(iso)
        return _classify_hnn(iso)
    raise WrongSpace("classification implemented for H2 and tree actions")


def _classify_moebius(m: MoebiusIsometry) -> IsometryClass:
    vals = [float(x) for x in (m.a, m.b, m.c, m.d)]
    if abs(abs(vals[0]) - 1) < 1e-12 and abs(vals[1]) < 1e-12 and abs(vals[2]) < 1e-12:
        if abs(vals[0] - vals[3]) < 1e-12:
            return IsometryClass("identity")
    tr = abs(m.trace())
    if tr < 2 - 1e-12:
        return IsometryClass("elliptic")
    if tr <= 2 + 1e-12:
        return IsometryClass("parabolic")
    length = 2 * math.acosh(tr / 2)
    a, b, c, d = (float(x) for x in (m.a, m.b, m.c, m.d))
    if abs(c) < 1e-15:
        fixed = [H2_INFINITY, b / (d - a)]
    else:
        disc = math.sqrt((a + d) ** 2 - 4)
        fixed = [((a - d) + s * disc) / (2 * c) for s in (+1, -1)]

    def attracting_first(points):
        def derivative(x):
            if x == H2_INFINITY:
                return (d / a) ** 2 if a != 0 else math.inf
            return 1.0 / (c * x + d) ** 2

        return sorted(points, key=lambda x: abs(derivative(x)))

    fixed = attracting_first(fixed)
    return IsometryClass("hyperbolic", length, tuple(fixed))


def _classify_cayley(iso: CayleyIsometry) -> IsometryClass:
    w = iso.word
    if not w:
        return IsometryClass("identity", 0)
    conj = []
    core = list(w)
    while len(core) >= 2 and core[0] == -core[-1]:
        conj.append(core[0])
        core = core[1:-1]
    core_t = tuple(core)
    prefix = tuple(conj)
    forward = make_word_end(prefix, core_t)
    backward = make_word_end(prefix, invert_word(core_t))
    return IsometryClass("hyperbolic", len(core_t), (forward, backward))


def _classify_hnn(iso: HnnIsometry) -> IsometryClass:
    if iso.shift == 0:
        if iso.add == 0:
            return IsometryClass("identity", 0)
        level = n_valuation(iso.add, iso.index)
        witness = HnnVertex(level, Fraction(0)) if level <= 0 else HnnTree(iso.index).canonical(level, Fraction(0))
        return IsometryClass("elliptic", 0, (), witness)
    fixed_value = iso.add / (1 - Fraction(iso.index) ** iso.shift)
    # Positive shifts contract n-adically toward the finite fixed point
    # (levels grow, balls shrink), so the downward end attracts.
    ends = (HnnDown(fixed_value), HnnUp())
    if iso.shift < 0:
        ends = (ends[1], ends[0])
    return IsometryClass("hyperbolic", abs(iso.shift), ends)


# ---------------------------------------------------------------------------
# Fixed ends of tree actions


@dataclass(frozen=True)
class FixedEndReport:
    """Classification of the set of ends fixed by every generator.

    ``status`` is one of empty / singleton / pair / all / unknown.  A pair
    only arises in the axis case: the two ends of a common translation
    axis.  ``unknown`` is the honest answer when the search bound is hit.
    """

    status: str
    ends: tuple = ()
    depth: int = 0


def fixed_ends_tree(action: GroupAction, depth: int = 8) -> FixedEndReport:
    if not isinstance(action.space, TreeSpace):
        raise WrongSpace("fixed_ends_tree needs a tree action")
    space = action.space
    gens = {name: iso for name, iso in action.generators.items()}
    classes = {name: classify_isometry(action, name) for name in sorted(gens)}
    if all(c.kind == "identity" for c in classes.values()):
        return FixedEndReport("all", (), depth)

    def fixed_by_all(end) -> bool:
        return all(
            _apply_boundary(space, iso, end) == end for iso in gens.values()
        )

    hyperbolic = [name for name, c in classes.items() if c.kind == "hyperbolic"]
    if hyperbolic:
        # Any end fixed by the whole action is fixed by this hyperbolic
        # element, hence is one of its two axis ends: the answer is exact.
        candidates = classes[hyperbolic[0]].axis_ends
        fixed = tuple(e for e in candidates if fixed_by_all(e))
        if len(fixed) == 0:
            return FixedEndReport("empty", (), depth)
        if len(fixed) == 1:
            return FixedEndReport("singleton", fixed, depth)
        return FixedEndReport("pair", fixed, depth)

    # Only elliptic generators remain.  On the HNN tree a nontrivial
    # translation x -> x + b fixes the upward end and no downward end, so
    # the answer is again exact.
    if isinstance(space.model, HnnTree):
        up = HnnUp()
        if fixed_by_all(up):
            return FixedEndReport("singleton", (up,), depth)
        return FixedEndReport("empty", (), depth)
    return FixedEndReport("unknown", (), depth)


# ---------------------------------------------------------------------------
# Endpoint characters and the Busemann cocycle


def character_at_end(action: GroupAction, e, a, word: str):
    """chi_e(g) = beta(ga) - beta(a) along a ray from a to e; requires every
    generator to fix e (raises EndNotFixed otherwise)."""
    space = action.space
    for name in sorted(action.generators):
        if not spaces._boundary_equal(space, action.boundary_apply(name, e), e):
            raise EndNotFixed(f"generator {name!r} moves the boundary point {e!r}")
    ray = ray_from(space, a, e)
    ga = action.apply(word, a)
    return busemann(space, ray, ga) - busemann(space, ray, a)


def psi_cocycle(action: GroupAction, e, word: str, a):
    """psi_e(g, a) = beta(ga) - beta(a); defined for every g, whether or not
    it fixes e, and independent of the ray chosen for e."""
    space = action.space
    ray = ray_from(space, a, e)
    ga = action.apply(word, a)
    return busemann(space, ray, ga) - busemann(space, ray, a)


# ---------------------------------------------------------------------------
# Shift calculus on finite control configurations


@dataclass(frozen=True)
class ControlConfiguration:
    """A finite labeled set of control points in one model space."""

    space: ModelSpace
    points: dict

    def __init__(self, space: ModelSpace, points: Mapping):
        if not points:
            raise EmptyConfiguration("control configurations are nonempty")
        checked = {label: space.check_point(p) for label, p in points.items()}
        object.__setattr__(self, "space", space)
        object.__setattr__(self, "points", checked)

    def labels(self):
        return sorted(self.points, key=str)


@dataclass(frozen=True)
class ShiftReport:
    """Per-point shifts toward an end, displacements, guaranteed shift and
    norm of a map on a control configuration.

    The shift bound |sh(x)| <= alpha(x) holds by construction: it is
    asserted when the report is built (exactly on trees, within 1e-9
    elsewhere), not merely offered to tests.
    """

    end: object
    shifts: dict
    displacements: dict
    gsh: object
    norm: object
    is_contraction: bool

    def __init__(self, end, shifts: dict, displacements: dict, exact: bool):
        tol = 0 if exact else GLOBAL_TOL
        for label, sh in shifts.items():
            alpha = displacements[label]
            if abs(sh) > alpha + tol:
                raise AssertionError(
                    f"shift bound violated at {label!r}: |{sh}| > {alpha}"
                )
        gsh = min(shifts.values())
        norm = max(displacements.values())
        object.__setattr__(self, "end", end)
        object.__setattr__(self, "shifts", dict(shifts))
        object.__setattr__(self, "displacements", dict(displacements))
        object.__setattr__(self, "gsh", gsh)
        object.__setattr__(self, "norm", norm)
        object.__setattr__(self, "is_contraction", gsh > 0)


def _resolve_image(cfg: ControlConfiguration, value):
    # Labels win over raw points when a value could be read as either.
    try:
        if value in cfg.points:
            return cfg.points[value]
    except TypeError:
        pass
    return cfg.space.check_point(value)


def _is_label(cfg: ControlConfiguration, value) -> bool:
    try:
        return value in cfg.points
    except TypeError:
        return False


def shift_report(cfg: ControlConfiguration, f: Mapping, e) -> ShiftReport:
    """Shift of the map f toward the end e on the configuration.

    f maps labels to explicit image points (or to labels of the
    configuration).  The shift at x is the Busemann gain beta(f(x)) -
    beta(x); the guaranteed shift is its minimum over the configuration,
    and the map is a contraction toward e when that minimum is positive.
    """
    space = cfg.space
    if not f:
        raise EmptyConfiguration("the map has empty domain")
    for label in f:
        if label not in cfg.points:
            raise NotClosed(f"domain label {label!r} is not in the configuration")
    ray = ray_from(space, space.origin(), e)
    shifts, alphas = {}, {}
    for label, target in sorted(f.items(), key=lambda kv: str(kv[0])):
        src = cfg.points[label]
        dst = _resolve_image(cfg, target)
        shifts[label] = busemann(space, ray, dst) - busemann(space, ray, src)
        alphas[label] = distance(space, src, dst)
    return ShiftReport(e, shifts, alphas, exact=isinstance(space, TreeSpace))


@dataclass(frozen=True)
class IterateCheck:
    passed: bool
    m: int
    gsh_iterate: object
    lower_bound: object


def iterate_shift_check(cfg: ControlConfiguration, f: Mapping, e, m: int) -> IterateCheck:
    """Check gsh(f^m) >= m gsh(f) for a label-closed map f."""
    for label, target in f.items():
        if not _is_label(cfg, target):
            raise NotClosed(f"image of {label!r} is not a configuration label")
    base = shift_report(cfg, f, e)
    current = {label: label for label in f}
    for _ in range(m):
        current = {label: f[current[label]] for label in current}
    iterate = shift_report(cfg, current, e)
    bound = m * base.gsh
    tol = 0 if isinstance(cfg.space, TreeSpace) else GLOBAL_TOL
    return IterateCheck(iterate.gsh >= bound - tol, m, iterate.gsh, bound)


@dataclass(frozen=True)
class EquivarianceCheck:
    passed: bool
    gsh_original: object
    gsh_translated: object


def equivariance_check(
    cfg: ControlConfiguration, f: Mapping, action: GroupAction, word: str, e
) -> EquivarianceCheck:
    """gsh toward g e of the translated map g f equals gsh toward e of f."""
    space = cfg.space
    original = shift_report(cfg, f, e)
    moved_points = {label: action.apply(word, p) for label, p in cfg.points.items()}
    moved_cfg = ControlConfiguration(space, moved_points)
    moved_f = {
        label: action.apply(word, _resolve_image(cfg, target)) for label, target in f.items()
    }
    moved_e = action.boundary_apply(word, e)
    translated = shift_report(moved_cfg, moved_f, moved_e)
    tol = 0 if isinstance(space, TreeSpace) else GLOBAL_TOL
    return EquivarianceCheck(
        abs(original.gsh - translated.gsh) <= tol, original.gsh, translated.gsh
    )


# ---------------------------------------------------------------------------
# Cocompactness at desk scale


@dataclass(frozen=True)
class NetCertificate:
    radius: float
    region_radius: float
    sample_count: int
    orbit_size: int
    max_min_distance: object


@dataclass(frozen=True)
class EmptyHoroballWitness:
    end: object
    level: object
    max_orbit_busemann: object
    max_region_busemann: object
    orbit_size: int


@dataclass(frozen=True)
class UnknownVerdict:
    reason: str


def _orbit(action: GroupAction, a, depth: int):
    """Orbit points of a up to generator-word length depth, deduplicated."""
    space = action.space
    gens = []
    for name, iso in sorted(action.generators.items()):
        gens.append(iso)
        gens.append(iso.inverse())

    def key(p):
        if isinstance(space, TreeSpace):
            return p
        if isinstance(space, HyperbolicPlane):
            return (round(p.real, 9), round(p.imag, 9))
        return tuple(round(c, 9) for c in p)

    frontier = [space.check_point(a)]
    seen = {key(frontier[0]): frontier[0]}
    for _ in range(depth):
        new = []
        for p in frontier:
            for iso in gens:
                q = _apply_isometry(space, iso, p)
                k = key(q)
                if k not in seen:
                    seen[k] = q
                    new.append(q)
        frontier = new
        if not frontier:
            break
    return list(seen.values())


def _region_samples(space: ModelSpace, center, region_radius, seed: int):
    if isinstance(space, TreeSpace):
        # All vertices within the radius.
        model = space.model
        out, frontier, seen = [], [center.vertex], {center.vertex}
        out.append(TreePoint(center.vertex))
        for _ in range(int(region_radius)):
            new = []
            for v in frontier:
                nbrs = model.children(v)
                parent = model.parent(v)
                if parent is not None:
                    nbrs = nbrs + [parent]
                for w in nbrs:
                    if w not in seen:
                        seen.add(w)
                        new.append(w)
                        out.append(TreePoint(w))
            frontier = new
        return out
    if isinstance(space, EuclideanSpace):
        # Even tick count keeps grid points off any integer lattice through
        # the center, so lattice orbits are probed at their worst spots.
        ticks = 8
        axes = [
            [center[i] + region_radius * (2.0 * t / (ticks - 1) - 1.0) for t in range(ticks)]
            for i in range(space.k)
        ]
        out = [
            p
            for p in itertools.product(*axes)
            if spaces._norm(spaces._sub(p, center)) <= region_radius + 1e-9
        ]
        out.extend(spaces.sample_points_near(space, center, 64, radius=region_radius, seed=seed))
        return out
    return spaces.sample_points_near(space, center, 200, radius=region_radius, seed=seed)


def _candidate_directions(space: ModelSpace, center, far_point):
    if isinstance(space, EuclideanSpace):
        out = []
        for i in range(space.k):
            for sign in (+1.0, -1.0):
                v = [0.0] * space.k
                v[i] = sign
                out.append(EDirection(tuple(v)))
        if far_point is not None and spaces._norm(spaces._sub(far_point, center)) > 1e-9:
            out.append(EDirection(spaces.direction(spaces._sub(far_point, center))))
        return out
    if isinstance(space, TreeSpace):
        model = space.model
        if isinstance(model, HnnTree):
            return [HnnUp()] + [HnnDown(Fraction(d)) for d in range(model.index)]
        out = []
        for child in model.children(model.base_vertex()):
            letter = child[-1]
            try:
                end = make_word_end((), (letter,))
                model.check_end(end)
                out.append(end)
            except ValueError:
                continue
        return out
    return [H2_INFINITY, Fraction(0), Fraction(1), Fraction(-1)]


def cocompactness_witness(action: GroupAction, a, radius: float, depth: int = 6, seed: int = 0):
    """Desk-scale test of the dichotomy "every direction reaches into the
    orbit iff the action is cocompact".

    Returns a NetCertificate when every sampled point of a bounded region
    lies within ``radius`` of the enumerated orbit of a; otherwise searches
    for an EmptyHoroballWitness: a direction e and level s whose horoball
    is met by the sampled region but by no enumerated orbit point (level
    margin 1, following the construction that tracks points at growing
    distance from the orbit).  Returns Unknown when the depth is exhausted
    without either certificate.
    """
    space = action.space
    a = space.check_point(a)
    orbit = _orbit(action, a, depth)
    region_radius = max(2, depth // 2) if isinstance(space, TreeSpace) else max(2.0, depth / 2.0)
    samples = _region_samples(space, a, region_radius, seed)

    worst = None
    worst_point = None
    for p in samples:
        dmin = min(distance(space, p, q) for q in orbit)
        if worst is None or dmin > worst:
            worst = dmin
            worst_point = p
    if worst is not None and worst <= radius:
        return NetCertificate(radius, float(region_radius), len(samples), len(orbit), worst)

    for e in _candidate_directions(space, a, worst_point):
        ray = ray_from(space, a, e)
        orbit_max = max(busemann(space, ray, q) for q in orbit)
        region_max = max(busemann(space, ray, p) for p in samples)
        level = orbit_max + 1
        if region_max >= level:
            return EmptyHoroballWitness(e, level, orbit_max, region_max, len(orbit))
    return UnknownVerdict(f"no certificate within depth {depth}")


# ---------------------------------------------------------------------------
# Numeric audits


@dataclass(frozen=True)
class AuditReport:
    passed: bool
    samples: int
    worst_slack: object
    details: dict = field(default_factory=dict)


def local_busemann_audit(
    M: ModelSpace, c, r, eps, e, e2, samples: int = 50, seed: int = 0
) -> AuditReport:
    """Check |beta_1(p) - beta_2(p)| < 2 eps + d(ray1(R), ray2(R)) on random
    points p of the r-ball around the common base, with the radius
    R = r (1 + 2 r / eps) + eps (any value strictly above r (1 + 2 r / eps)
    works; this one is used throughout).
    """
    c = M.check_point(c)
    if isinstance(M, TreeSpace):
        r, eps = Fraction(r), Fraction(eps)
    R = r * (1 + 2 * r / eps) + eps
    ray1 = ray_from(M, c, e)
    ray2 = ray_from(M, c, e2)
    rhs = 2 * eps + distance(M, ray1.point_at(R), ray2.point_at(R))
    pts = [
        p
        for p in spaces.sample_points_near(M, c, samples * 2, radius=float(r), seed=seed)
        if distance(M, c, p) <= r
    ][:samples]
    worst = None
    for p in pts:
        lhs = abs(busemann(M, ray1, p) - busemann(M, ray2, p))
        slack = rhs - lhs
        if worst is None or slack < worst:
            worst = slack
    passed = worst is not None and worst > 0
    return AuditReport(passed, len(pts), worst, {"R": R, "rhs": rhs})


def angle_estimate_audit(M: ModelSpace, ray1: GeneralizedRay, ray2: GeneralizedRay, schedule) -> AuditReport:
    """Check the chord bound d(ray1(t), ray2(t)) <= 2 t sin(angle/2) where
    the angle is the angular distance of the two endpoints; equality on
    E^k, inequality elsewhere."""
    if distance(M, ray1.base, ray2.base) > (0 if isinstance(M, TreeSpace) else 1e-12):
        raise ValueError("the chord estimate needs a common base point")
    ang = angular_distance(M, ray1.end, ray2.end)
    worst = None
    rows = []
    for t in schedule:
        lhs = distance(M, ray1.point_at(t), ray2.point_at(t))
        rhs = 2 * float(t) * math.sin(ang / 2)
        slack = rhs - float(lhs)
        rows.append((float(t), float(lhs), rhs))
        if worst is None or slack < worst:
            worst = slack
    return AuditReport(worst is not None and worst >= -GLOBAL_TOL, len(rows), worst, {"angle": ang})


# ---------------------------------------------------------------------------
# The boundary classification for the modular group


@dataclass(frozen=True)
class QuadraticIrrational:
    """a + b sqrt(d) with rational a, b and a positive nonsquare integer d."""

    a: Fraction
    b: Fraction
    d: int

    def __init__(self, a, b, d):
        object.__setattr__(self, "a", Fraction(a))
        object.__setattr__(self, "b", Fraction(b))
        object.__setattr__(self, "d", int(d))
        if self.d <= 0:
            raise ValueError("the radicand must be positive")

    @property
    def is_rational(self) -> bool:
        return self.b == 0 or math.isqrt(self.d) ** 2 == self.d


def sl2z_sigma0_complement(e) -> bool:
    """True iff the boundary point is rational or infinity: these form the
    single orbit of infinity under the modular group, the complement of the
    degree-zero invariant of its action on the hyperbolic plane.

    The value must be given exactly: an int, Fraction, a string like
    "3/7" or "inf", math.inf, or a QuadraticIrrational.  Finite floats are
    rejected (a binary float is a rational, but almost always an
    approximation of something else).
    """
    if isinstance(e, QuadraticIrrational):
        return e.is_rational
    if isinstance(e, str):
        if e in ("inf", "oo", "infinity"):
            return True
        try:
            Fraction(e)
            return True
        except ValueError as exc:
            raise UnsupportedNumberForm(f"cannot read {e!r} exactly") from exc
    if e == H2_INFINITY:
        return True
    if isinstance(e, (int, Fraction)):
        return True
    raise UnsupportedNumberForm(f"{e!r} is not an exact boundary value")
