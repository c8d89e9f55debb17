"""Graphs, flag complexes, connectivity verdicts, the diagonal-character
membership test, and coordinate hemispheres."""

import itertools
import random

import pytest

from cat0sigma.errors import UnknownVertex
from cat0sigma.homology import homology
from cat0sigma.raag import (
    IN,
    OUT,
    SimpleGraph,
    bestvina_brady,
    connectivity_verdict,
    coordinate_hemisphere,
    edge_path_presentation,
    flag_complex,
    tietze_trivialize,
)
from cat0sigma.sphere import Character, SpherePoint


def brute_force_cliques(graph: SimpleGraph) -> set:
    index = {v: i for i, v in enumerate(graph.vertices)}
    out = set()
    verts = list(graph.vertices)
    for r in range(1, len(verts) + 1):
        for combo in itertools.combinations(verts, r):
            if all(graph.adjacent(u, v) for u, v in itertools.combinations(combo, 2)):
                out.add(tuple(sorted(index[v] for v in combo)))
    return out


def test_graph_validation():
    with pytest.raises(ValueError):
        SimpleGraph([0, 1], [(0, 0)])
    with pytest.raises(UnknownVertex):
        SimpleGraph([0, 1], [(0, 2)])
    with pytest.raises(ValueError):
        SimpleGraph([0, 0], [])
    g = SimpleGraph([0, 1, 2], [(0, 1), (1, 0)])
    assert len(g.edges) == 1


def test_graph_parsers():
    g = SimpleGraph.from_json({"vertices": [0, 1, 2], "edges": [[0, 1], [1, 2]]})
    assert g.adjacent(0, 1) and not g.adjacent(0, 2)
    text = """
    # a path with an isolated vertex
    a b
    b c
    d
    """
    h = SimpleGraph.from_edge_list(text)
    assert set(h.vertices) == {"a", "b", "c", "d"}
    assert h.adjacent("a", "b") and not h.adjacent("a", "c")
    assert SimpleGraph.from_json(h.to_json()).edges == h.edges


def test_flag_complex_examples():
    full = flag_complex(SimpleGraph.complete(4))
    assert len(full.simplices) == 15  # the full 3-simplex
    square = flag_complex(SimpleGraph.cycle(4))
    assert square.dimension == 1  # no triangles in the 4-cycle
    assert len(square.faces(1)) == 4
    octa = flag_complex(SimpleGraph.octahedron())
    assert len(octa.faces(2)) == 8  # the eight faces of the 2-sphere
    assert octa.dimension == 2


def test_flag_complex_matches_brute_force(rng):
    # Random graphs up to the contract bound of 12 vertices.
    for trial in range(15):
        n = rng.randrange(1, 13)
        p = 0.5 if n <= 8 else 0.3
        edges = [e for e in itertools.combinations(range(n), 2) if rng.random() < p]
        graph = SimpleGraph(range(n), edges)
        K = flag_complex(graph)
        assert set(K.simplices) == brute_force_cliques(graph)
        for e in graph.edges:
            assert tuple(sorted(e)) in K.simplices


def test_octahedron_flag_complex_is_a_two_sphere():
    octa = flag_complex(SimpleGraph.octahedron())
    profile = homology(octa)
    assert profile.betti == (1, 0, 1)
    assert not profile.torsion_at(1)


def test_tietze_trivializes_simple_presentations():
    # <g | g> collapses.
    cert = tietze_trivialize(1, [(1,)])
    assert cert.trivialized
    # <g, h | g h, h> collapses by substitution.
    cert = tietze_trivialize(2, [(1, 2), (2,)])
    assert cert.trivialized
    # <g | > is free of rank one: no move applies.
    cert = tietze_trivialize(1, [])
    assert not cert.trivialized


def test_edge_path_group_of_sphere_is_trivial():
    octa = flag_complex(SimpleGraph.octahedron())
    gens, rels = edge_path_presentation(octa)
    assert gens == 12 - 5  # edges minus spanning tree
    cert = tietze_trivialize(gens, rels)
    assert cert.trivialized


def test_connectivity_verdicts():
    full = flag_complex(SimpleGraph.complete(5))
    v = connectivity_verdict(full, 4)
    assert v.all_requirements() == "yes"

    square = flag_complex(SimpleGraph.cycle(4))
    v = connectivity_verdict(square, 2)
    assert v.connected == "yes"
    assert v.simply_connected == "no"
    assert v.all_requirements() == "no"

    octa = flag_complex(SimpleGraph.octahedron())
    assert connectivity_verdict(octa, 2).all_requirements() == "yes"
    assert connectivity_verdict(octa, 3).all_requirements() == "no"

    two_points = flag_complex(SimpleGraph([0, 1], []))
    v = connectivity_verdict(two_points, 1)
    assert v.connected == "no"
    assert connectivity_verdict(two_points, 0).all_requirements() == "yes"


def test_bestvina_brady_fixed_points():
    for m in range(1, 7):
        graph = SimpleGraph.complete(m)
        for n in range(0, 6):
            assert bestvina_brady(graph, n) == IN
    c4 = SimpleGraph.cycle(4)
    assert bestvina_brady(c4, 1) == IN
    assert bestvina_brady(c4, 2) == OUT
    octa = SimpleGraph.octahedron()
    assert bestvina_brady(octa, 2) == IN
    assert bestvina_brady(octa, 3) == OUT


def test_bestvina_brady_level_one_is_connectivity(rng):
    for _ in range(20):
        n = rng.randrange(1, 8)
        edges = [e for e in itertools.combinations(range(n), 2) if rng.random() < 0.35]
        graph = SimpleGraph(range(n), edges)
        K = flag_complex(graph)
        connected = homology(K).betti_reduced(0) == 0 if K.simplices else False
        assert (bestvina_brady(graph, 1) == IN) == connected


def test_membership_is_monotone_in_the_degree():
    graphs = [
        SimpleGraph.complete(4),
        SimpleGraph.cycle(4),
        SimpleGraph.cycle(5),
        SimpleGraph.octahedron(),
        SimpleGraph([0, 1, 2], [(0, 1)]),
    ]
    for graph in graphs:
        values = [bestvina_brady(graph, n) for n in range(0, 5)]
        for low, high in zip(values, values[1:]):
            if high == IN:
                assert low == IN


def test_coordinate_hemisphere():
    graph = SimpleGraph(["u", "v", "w"], [("u", "v")])
    hemi = coordinate_hemisphere(graph, "u")
    assert hemi.normal == SpherePoint((1, 0, 0))
    anti = coordinate_hemisphere(graph, "u").normal.antipode()
    assert anti == SpherePoint((-1, 0, 0))
    diagonal = Character([1, 1, 1])
    assert hemi.contains_character(diagonal)
    with pytest.raises(UnknownVertex):
        coordinate_hemisphere(graph, "zz")
