"""Right-angled Artin groups from graphs: flag complexes, connectivity
certification, and the diagonal-character membership test.

The group of a graph has one generator per vertex, with adjacent
generators commuting (the right-angled Artin convention; right-angled
Coxeter groups would add involution relations and are not modeled here).
The diagonal character sends every generator to 1; by the Bestvina-Brady
criterion it lies in the degree-n invariant of the group exactly when the
flag complex of the graph is (n-1)-connected.

Connectedness and homology vanishing are decided exactly; simple
connectivity is undecidable in general, so the verdict is three-valued:
Yes comes with a Tietze trivialization certificate of the edge-path group,
No with a nonvanishing first homology group, and Unknown is an honest
answer when the rewriting budget runs out.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Mapping, Optional, Sequence

from .errors import UnknownVertex
from .homology import HomologyProfile, SimplicialComplex, homology
from .sphere import OpenHemisphere, SpherePoint


@dataclass(frozen=True)
class SimpleGraph:
    """A finite simple graph: no loops, no multi-edges."""

    vertices: tuple
    edges: frozenset

    def __init__(self, vertices: Iterable, edges: Iterable[Sequence]):
        verts = tuple(vertices)
        seen = set()
        for v in verts:
            if v in seen:
                raise ValueError(f"duplicate vertex {v!r}")
            seen.add(v)
        es = set()
        for e in edges:
            u, v = e
            if u == v:
                raise ValueError(f"loop at {u!r}")
            if u not in seen or v not in seen:
                raise UnknownVertex(f"edge {e!r} uses an undeclared vertex")
            es.add(frozenset((u, v)))
        object.__setattr__(self, "vertices", verts)
        object.__setattr__(self, "edges", frozenset(es))

    def adjacent(self, u, v) -> bool:
        return frozenset((u, v)) in self.edges

    def neighbors(self, v) -> set:
        return {next(iter(e - {v})) for e in self.edges if v in e}

    @staticmethod
    def complete(m: int) -> "SimpleGraph":
        return SimpleGraph(range(m), itertools.combinations(range(m), 2))

    @staticmethod
    def cycle(m: int) -> "SimpleGraph":
        return SimpleGraph(range(m), [(i, (i + 1) % m) for i in range(m)])

    @staticmethod
    def octahedron() -> "SimpleGraph":
        """The 1-skeleton of the octahedron: six vertices, all edges except
        the three antipodal pairs (0,1), (2,3), (4,5)."""
        anti = {frozenset((0, 1)), frozenset((2, 3)), frozenset((4, 5))}
        edges = [e for e in itertools.combinations(range(6), 2) if frozenset(e) not in anti]
        return SimpleGraph(range(6), edges)

    @staticmethod
    def from_json(data: Mapping) -> "SimpleGraph":
        return SimpleGraph(data["vertices"], data["edges"])

    def to_json(self) -> dict:
        return {
            "vertices": list(self.vertices),
            "edges": sorted(sorted(e) for e in self.edges),
        }

    @staticmethod
    def from_edge_list(text: str) -> "SimpleGraph":
        """Plain text format: one edge "u v" per line; lines with a single
        token declare isolated vertices; '#' starts a comment."""
        vertices: list = []
        seen = set()
        edges = []
        for line in text.splitlines():
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            parts = line.split()
            for p in parts:
                if p not in seen:
                    seen.add(p)
                    vertices.append(p)
            if len(parts) == 2:
                edges.append((parts[0], parts[1]))
            elif len(parts) > 2:
                raise ValueError(f"cannot parse edge line {line!r}")
        return SimpleGraph(vertices, edges)


def flag_complex(graph: SimpleGraph) -> SimplicialComplex:
    """The complex whose simplices are the cliques of the graph.

    Maximal cliques are enumerated by Bron-Kerbosch with pivoting; the
    complex closes them under faces.
    """
    index = {v: i for i, v in enumerate(graph.vertices)}
    adj = {index[v]: {index[w] for w in graph.neighbors(v)} for v in graph.vertices}
    maximal: list[tuple[int, ...]] = []

    def bron_kerbosch(r: set, p: set, x: set):
        if not p and not x:
            if r:
                maximal.append(tuple(sorted(r)))
            return
        pivot = max(p | x, key=lambda u: len(adj[u] & p))
        for v in list(p - adj[pivot]):
            bron_kerbosch(r | {v}, p & adj[v], x & adj[v])
            p.remove(v)
            x.add(v)

    if graph.vertices:
        bron_kerbosch(set(), set(adj), set())
    return SimplicialComplex.from_maximal(maximal)


# ---------------------------------------------------------------------------
# Simple connectivity by bounded Tietze trivialization


@dataclass(frozen=True)
class TietzeCertificate:
    trivialized: bool
    generators: int
    relators: int
    steps: int
    log: tuple = ()


def _spanning_tree(vertices: list, edges: list) -> set:
    parent = {v: v for v in vertices}

    def find(v):
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    tree = set()
    for e in edges:
        u, v = tuple(e)
        ru, rv = find(u), find(v)
        if ru != rv:
            parent[ru] = rv
            tree.add(e)
    return tree


def _free_reduce(word: tuple) -> tuple:
    out = []
    for letter in word:
        if out and out[-1] == -letter:
            out.pop()
        else:
            out.append(letter)
    return tuple(out)


def _cyclic_reduce(word: tuple) -> tuple:
    word = _free_reduce(word)
    while len(word) >= 2 and word[0] == -word[-1]:
        word = word[1:-1]
    return word


def tietze_trivialize(generator_count: int, relators: list, budget: int = 10_000) -> TietzeCertificate:
    """Try to reduce a finite presentation to the trivial one.

    Moves: free/cyclic reduction, deletion of trivial relators, and
    substitution along a relator containing some generator exactly once.
    Each rewriting pass costs budget; returns trivialized=True only when no
    generators remain.
    """
    gens = set(range(1, generator_count + 1))
    rels = [_cyclic_reduce(tuple(r)) for r in relators]
    steps = 0
    log = []
    changed = True
    while changed and steps < budget:
        changed = False
        rels = [r for r in (_cyclic_reduce(r) for r in rels) if r]
        rels.sort(key=len)
        for r in rels:
            steps += 1
            counts = {}
            for letter in r:
                counts[abs(letter)] = counts.get(abs(letter), 0) + 1
            lone = next((g for g, c in counts.items() if c == 1 and g in gens), None)
            if lone is None:
                continue
            # Solve r = 1 for the lone generator and substitute everywhere.
            i = next(idx for idx, letter in enumerate(r) if abs(letter) == lone)
            rotated = r[i + 1:] + r[:i]
            replacement = tuple(-x for x in reversed(rotated)) if r[i] > 0 else rotated
            new_rels = []
            for other in rels:
                if other is r:
                    continue
                word = []
                for letter in other:
                    if letter == lone:
                        word.extend(replacement)
                    elif letter == -lone:
                        word.extend(-x for x in reversed(replacement))
                    else:
                        word.append(letter)
                new_rels.append(_cyclic_reduce(tuple(word)))
            gens.discard(lone)
            log.append(f"eliminate g{lone} via relator of length {len(r)}")
            rels = [w for w in new_rels if w]
            changed = True
            break
    trivial = not gens and not rels
    return TietzeCertificate(trivial, len(gens), len(rels), steps, tuple(log[:50]))


def edge_path_presentation(K: SimplicialComplex) -> tuple[int, list]:
    """Presentation of the edge-path group of a connected complex: one
    generator per non-tree edge, one relator per triangle."""
    vertices = K.vertices
    edges = [frozenset(s) for s in K.faces(1)]
    tree = _spanning_tree(vertices, edges)
    non_tree = [e for e in edges if e not in tree]
    gen_of = {}
    for i, e in enumerate(non_tree):
        u, v = sorted(e)
        gen_of[(u, v)] = i + 1
        gen_of[(v, u)] = -(i + 1)

    def letter(u, v):
        return gen_of.get((u, v), 0)

    relators = []
    for tri in K.faces(2):
        a, b, c = tri
        word = tuple(x for x in (letter(a, b), letter(b, c), letter(c, a)) if x != 0)
        relators.append(word)
    return len(non_tree), relators


# ---------------------------------------------------------------------------
# Verdicts


YES = "yes"
NO = "no"
UNKNOWN = "unknown"

IN = "In"
OUT = "Out"
MEMBERSHIP_UNKNOWN = "Unknown"


@dataclass(frozen=True)
class ConnectivityVerdict:
    """Status of the requirements for (n-1)-connectedness of a complex.

    connected and homology vanishing are decided; simple connectivity may
    be Unknown.  Yes for simple connectivity always carries a Tietze
    trivialization certificate; No carries nonvanishing first homology.
    """

    level: int
    nonempty: bool
    connected: str
    simply_connected: str
    homology_vanishing: str
    profile: Optional[HomologyProfile] = None
    certificate: Optional[TietzeCertificate] = None

    def all_requirements(self) -> str:
        """Combined verdict for (level-1)-connectedness."""
        if self.level <= 0:
            return YES if self.nonempty else NO
        needed = [self.connected]
        if self.level >= 2:
            needed.append(self.simply_connected)
            needed.append(self.homology_vanishing)
        if any(v == NO for v in needed):
            return NO
        if any(v == UNKNOWN for v in needed):
            return UNKNOWN
        return YES


def connectivity_verdict(K: SimplicialComplex, n: int, tietze_budget: int = 10_000) -> ConnectivityVerdict:
    """Decide (n-1)-connectedness of a finite complex as far as possible.

    n = 0 asks the complex to be nonempty, n = 1 connected, and n >= 2
    additionally simply connected with reduced homology vanishing up to
    degree n-1.  Homology vanishing in degree 1 is implied by (and checked
    against) simple connectivity.
    """
    nonempty = bool(K.simplices)
    if not nonempty:
        return ConnectivityVerdict(n, False, NO, NO, NO, None, None)
    profile = homology(K, max_degree=max(n - 1, 1))
    connected = YES if profile.betti_reduced(0) == 0 else NO
    h1_trivial = profile.betti_reduced(1) == 0 and not profile.torsion_at(1)
    if connected == NO:
        simply = NO
        certificate = None
    elif not h1_trivial:
        simply = NO
        certificate = None
    else:
        gens, rels = edge_path_presentation(K)
        certificate = tietze_trivialize(gens, rels, budget=tietze_budget)
        simply = YES if certificate.trivialized else UNKNOWN
    vanishing = YES if profile.reduced_trivial_through(max(n - 1, 0)) else NO
    if n <= 1:
        vanishing = YES if connected == YES else NO
    return ConnectivityVerdict(n, nonempty, connected, simply, vanishing, profile, certificate)


def bestvina_brady(graph: SimpleGraph, n: int, tietze_budget: int = 10_000) -> str:
    """Membership of the diagonal character in the degree-n invariant of
    the right-angled Artin group of the graph: In / Out / Unknown, by the
    flag-complex connectivity criterion."""
    verdict = connectivity_verdict(flag_complex(graph), n, tietze_budget=tietze_budget)
    combined = verdict.all_requirements()
    if combined == YES:
        return IN
    if combined == NO:
        return OUT
    return MEMBERSHIP_UNKNOWN


def coordinate_hemisphere(graph: SimpleGraph, v) -> OpenHemisphere:
    """The open hemisphere of characters positive on one vertex generator,
    in coordinates indexed by the graph's vertex order."""
    if v not in graph.vertices:
        raise UnknownVertex(f"{v!r} is not a vertex")
    i = graph.vertices.index(v)
    normal = tuple(1 if j == i else 0 for j in range(len(graph.vertices)))
    return OpenHemisphere(SpherePoint(normal))
