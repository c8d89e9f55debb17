"""Integer homology through Smith normal form, cross-checked against a
rational rank oracle and hand-checked complexes."""

import itertools
import random

import pytest

from cat0sigma.homology import (
    SimplicialComplex,
    homology,
    rational_rank,
    smith_normal_form,
)

# The six-vertex triangulation of the projective plane (antipodal quotient
# of the icosahedron); its first homology is Z/2.
RP2_TRIANGLES = [
    (0, 1, 4), (0, 1, 5), (0, 2, 3), (0, 2, 4), (0, 3, 5),
    (1, 2, 3), (1, 2, 5), (1, 3, 4), (2, 4, 5), (3, 4, 5),
]


def test_smith_normal_form_known_matrices():
    assert smith_normal_form([[2, 4], [6, 8]]) == [2, 4]
    assert smith_normal_form([[1, 0], [0, 1]]) == [1, 1]
    assert smith_normal_form([[0, 0], [0, 0]]) == []
    assert smith_normal_form([[2, 0], [0, 3]]) == [1, 6]
    assert smith_normal_form([[6]]) == [6]
    # Divisibility chain on a bigger example.
    factors = smith_normal_form([[2, 4, 4], [-6, 6, 12], [10, 4, 16]])
    assert factors == [2, 2, 156]
    for a, b in zip(factors, factors[1:]):
        assert b % a == 0


def test_snf_rank_matches_rational_rank_seeded():
    rng = random.Random(13)
    for _ in range(60):
        rows = rng.randrange(1, 6)
        cols = rng.randrange(1, 6)
        m = [[rng.randrange(-5, 6) for _ in range(cols)] for _ in range(rows)]
        assert len(smith_normal_form(m)) == rational_rank(m)


def test_snf_regression_coefficient_blowup():
    # This 7x7 matrix livelocked an earlier clearing strategy through
    # integer blowup; determinant cross-check: |det| = 1482797.
    m = [
        [3, -3, -4, -2, -2, -5, -7],
        [-1, 3, 7, 8, -7, 6, -3],
        [4, 9, -3, 2, 3, -3, -5],
        [5, -4, 9, 1, -7, 7, -7],
        [6, 1, 3, -8, -1, 8, -9],
        [4, -3, 2, 8, -7, 5, 7],
        [-3, 5, -8, 2, -5, -3, -4],
    ]
    factors = smith_normal_form(m)
    assert factors == [1, 1, 1, 1, 1, 1, 1482797]
    assert abs(_exact_det(m)) == 1482797


def test_snf_stress_divisibility_and_determinant():
    # Larger matrices with wilder entries: the invariant factors stay
    # divisibility-ordered, match the rational rank, and their product
    # divides into the determinant (equal up to sign for full rank).
    import math as _math

    rng = random.Random(99)
    for _ in range(12):
        n = rng.randrange(4, 8)
        m = [[rng.randrange(-9, 10) for _ in range(n)] for _ in range(n)]
        factors = smith_normal_form(m)
        assert len(factors) == rational_rank(m)
        for a, b in zip(factors, factors[1:]):
            assert b % a == 0
        if len(factors) == n:
            det = _exact_det(m)
            prod = _math.prod(factors)
            assert abs(det) == prod


def _exact_det(m):
    from fractions import Fraction

    n = len(m)
    a = [[Fraction(x) for x in row] for row in m]
    det = Fraction(1)
    for col in range(n):
        piv = next((r for r in range(col, n) if a[r][col] != 0), None)
        if piv is None:
            return 0
        if piv != col:
            a[col], a[piv] = a[piv], a[col]
            det = -det
        det *= a[col][col]
        inv = a[col][col]
        for r in range(col + 1, n):
            if a[r][col] != 0:
                f = a[r][col] / inv
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
    return int(det)


def test_complex_face_closure_and_euler():
    K = SimplicialComplex.from_maximal([(0, 1, 2)])
    assert len(K.simplices) == 7
    assert K.euler_characteristic() == 1
    assert K.dimension == 2
    boundary = SimplicialComplex([(0, 1), (1, 2), (0, 2)])
    assert boundary.euler_characteristic() == 0


def test_boundary_of_triangle_has_circle_homology():
    K = SimplicialComplex([(0, 1), (1, 2), (0, 2)])
    profile = homology(K)
    assert profile.betti_reduced(0) == 0
    assert profile.betti_reduced(1) == 1
    assert profile.torsion_at(1) == ()


def test_two_spheres_and_wedges():
    # Boundary of the tetrahedron: a 2-sphere.
    K = SimplicialComplex([s for s in itertools.combinations(range(4), 3)])
    profile = homology(K)
    assert profile.betti == (1, 0, 1)
    # Disjoint union of two circles: b0 = 2, b1 = 2.
    K2 = SimplicialComplex([(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)])
    profile2 = homology(K2)
    assert profile2.betti[0] == 2 and profile2.betti[1] == 2


def test_projective_plane_torsion():
    K = SimplicialComplex.from_maximal(RP2_TRIANGLES)
    profile = homology(K)
    assert profile.betti_reduced(0) == 0
    assert profile.betti_reduced(1) == 0
    assert profile.torsion_at(1) == (2,)
    assert profile.betti_reduced(2) == 0


def test_full_simplex_is_acyclic():
    K = SimplicialComplex.from_maximal([tuple(range(6))])
    profile = homology(K, max_degree=5)
    assert profile.reduced_trivial_through(5)


def test_betti_numbers_match_rational_oracle():
    complexes = [
        SimplicialComplex.from_maximal(RP2_TRIANGLES),
        SimplicialComplex([(0, 1), (1, 2), (0, 2), (2, 3)]),
        SimplicialComplex.from_maximal([s for s in itertools.combinations(range(5), 3)]),
    ]
    for K in complexes:
        a = homology(K)
        b = homology(K, use_rational_oracle=True)
        assert a.betti == b.betti


def test_euler_characteristic_equals_alternating_betti_sum():
    rng = random.Random(8)
    for _ in range(25):
        verts = rng.randrange(3, 7)
        maximal = set()
        for _ in range(rng.randrange(2, 7)):
            size = rng.randrange(1, 4)
            maximal.add(tuple(sorted(rng.sample(range(verts), size))))
        K = SimplicialComplex.from_maximal(maximal)
        profile = homology(K)
        chi_from_homology = sum(
            (-1) ** d * profile.betti[d] for d in range(len(profile.betti))
        )
        assert chi_from_homology == K.euler_characteristic()
