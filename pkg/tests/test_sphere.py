"""Character sphere: rays, hemispheres, polyhedral sets, m-values, and the
join description of Euclidean translation actions."""

import random
from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cat0sigma.errors import DimensionMismatch, NotTranslationAction, ZeroCharacter
from cat0sigma.exactlp import strictly_representable_fm
from cat0sigma.sphere import (
    Character,
    MValue,
    OpenHemisphere,
    PolyhedralSet,
    SpherePoint,
    euclidean_join_decomposition,
    m_value,
    minimal_ray_count,
    normalize_ray,
    points_from_json,
    points_to_json,
    polyhedral_contains,
)
from cat0sigma.treesigma import generate_sphere_points

INF = float("inf")

rationals = st.fractions(min_value=-100, max_value=100, max_denominator=40)


def test_normalize_ray_examples():
    assert normalize_ray(Character([F(2, 3), F(-4, 3)])).primitive == (1, -2)
    assert normalize_ray(Character([5, 0, 0])).primitive == (1, 0, 0)
    with pytest.raises(ZeroCharacter):
        normalize_ray(Character([0, 0]))


@settings(max_examples=120)
@given(
    coords=st.lists(rationals, min_size=1, max_size=4),
    scale=st.fractions(min_value=F(1, 32), max_value=50, max_denominator=32),
)
def test_normalize_ray_is_scale_invariant_and_odd(coords, scale):
    chi = Character(coords)
    if chi.is_zero:
        return
    base = normalize_ray(chi)
    assert normalize_ray(chi.scaled(scale)) == base
    assert normalize_ray(-chi) == base.antipode()


def test_sphere_point_validation():
    with pytest.raises(ValueError):
        SpherePoint((2, 4))
    with pytest.raises(ZeroCharacter):
        SpherePoint((0, 0))


def test_polyhedral_membership_examples():
    v = SpherePoint((1, 0))
    hemi = OpenHemisphere(v)
    pset = PolyhedralSet.from_clauses(2, [[hemi]])
    assert polyhedral_contains(pset, v) is True
    assert polyhedral_contains(pset, v.antipode()) is False
    assert polyhedral_contains(PolyhedralSet.empty(2), v) is False
    assert polyhedral_contains(PolyhedralSet.full(2), v.antipode()) is True
    with pytest.raises(DimensionMismatch):
        polyhedral_contains(pset, SpherePoint((1, 0, 0)))


def test_polyhedral_membership_ignores_positive_scaling():
    pset = PolyhedralSet.from_clauses(2, [[OpenHemisphere(SpherePoint((2, -3)))]])
    chi = Character([F(7, 3), F(1, 6)])
    scaled = chi.scaled(F(9, 4))
    assert pset.contains_character(chi) == pset.contains_character(scaled)
    assert pset.contains(normalize_ray(chi)) == pset.contains_character(chi)


def test_finite_complement_mode():
    pts = [SpherePoint((1,)), SpherePoint((-1,))]
    pset = PolyhedralSet.complement_of_points(1, pts)
    assert pset.mode == "finite_complement"
    assert not pset.contains(SpherePoint((1,)))
    round_trip = PolyhedralSet.from_json(pset.to_json())
    assert round_trip.complement_points == pset.complement_points


def test_polyhedral_json_round_trip():
    pset = PolyhedralSet.from_clauses(
        2,
        [
            [OpenHemisphere(SpherePoint((1, 0))), OpenHemisphere(SpherePoint((0, 1)))],
            [OpenHemisphere(SpherePoint((-1, -1)))],
        ],
    )
    again = PolyhedralSet.from_json(pset.to_json())
    for vec in [(1, 1), (1, -2), (-1, -1), (-2, 1)]:
        p = SpherePoint(vec)
        assert polyhedral_contains(pset, p) == polyhedral_contains(again, p)
    k, pts = points_from_json(points_to_json(2, [SpherePoint((1, 2))]))
    assert k == 2 and pts == [SpherePoint((1, 2))]


# ---------------------------------------------------------------------------
# Minimal ray counts and m-values.  Frozen values computed with the
# Fourier-Motzkin enumeration oracle.


def test_minimal_ray_count_frozen_examples():
    assert minimal_ray_count([], Character([1])) == INF
    pair = [SpherePoint((1,)), SpherePoint((-1,))]
    assert minimal_ray_count(pair, Character.zero(1)) == 2
    # Three rays at mutual angle 120 degrees (integer model), summing to 0.
    trio = [SpherePoint((1, 0)), SpherePoint((0, 1)), SpherePoint((-1, -1))]
    assert minimal_ray_count(trio, Character([-1, 0])) == 2
    assert minimal_ray_count(trio, Character.zero(2)) == 3


def test_m_value_frozen_examples():
    assert m_value([], Character.zero(3)).value == INF
    pair = [SpherePoint((1,)), SpherePoint((-1,))]
    assert m_value(pair, Character.zero(1)).value == 1
    assert m_value(pair, Character([1])).value == INF
    trio = [SpherePoint((1, 0)), SpherePoint((0, 1)), SpherePoint((-1, -1))]
    assert m_value(trio, Character.zero(2)).value == 2
    assert m_value(trio, Character([-1, 0])).value == 1
    assert m_value(trio, Character([1, 0])).value == INF


def test_m_value_removes_the_ray_of_chi_itself():
    pts = [SpherePoint((1,)), SpherePoint((-1,))]
    # [chi] = (1) is removed from the candidate rays, leaving only (-1).
    assert minimal_ray_count(pts, Character([F(1, 2)])) == INF


def test_m_value_validation():
    with pytest.raises(ValueError):
        MValue(0)
    with pytest.raises(ValueError):
        MValue(F(3, 2))
    assert MValue(1) <= MValue(INF)


def test_lp_route_equals_enumeration_oracle_on_seeded_instances():
    rng = random.Random(99)
    for _ in range(120):
        k = rng.randrange(1, 4)
        pts = generate_sphere_points(rng, k, rng.randrange(0, 7), forbid_antipodal=False)
        chi = Character(tuple(rng.randrange(-3, 4) for _ in range(k)))
        lp = m_value(pts, chi).value
        fm = m_value(pts, chi, representable=strictly_representable_fm).value
        assert lp == fm


def test_m_value_monotone_under_enlarging_the_set():
    rng = random.Random(7)
    for _ in range(60):
        k = rng.randrange(1, 4)
        pts = generate_sphere_points(rng, k, rng.randrange(1, 6), forbid_antipodal=False)
        extra = generate_sphere_points(rng, k, 2, forbid_antipodal=False)
        chi = Character(tuple(rng.randrange(-2, 3) for _ in range(k)))
        small = m_value(pts, chi).value
        large = m_value(list(dict.fromkeys(pts + extra)), chi).value
        assert large <= small


def test_m_chi_near_m_zero_holds_often_but_not_always():
    # Empirical study of the relation between m(chi) and m(0) for rays
    # [chi] inside the complement set.  Both m(0) and m(0) - 1 occur, but
    # the relation is NOT universal over antipodal-free rational sets:
    # nothing in this package assumes it.
    rng = random.Random(31337)
    hits = {"equal": 0, "one_less": 0, "other": 0}
    for _ in range(120):
        k = rng.randrange(1, 4)
        pts = generate_sphere_points(rng, k, rng.randrange(2, 7))
        if not pts:
            continue
        chi = rng.choice(pts).character()
        m_zero = m_value(pts, Character.zero(k)).value
        m_chi = m_value(pts, chi).value
        if m_zero == INF:
            continue
        if m_chi == m_zero:
            hits["equal"] += 1
        elif m_chi == m_zero - 1:
            hits["one_less"] += 1
        else:
            hits["other"] += 1
    assert hits["one_less"] > 0
    # Frozen instance where the values coincide: m(chi) = m(0) = 2.
    pts = [
        SpherePoint(v)
        for v in [(-3, -1, 0), (2, 0, -3), (0, 2, -3), (-2, -1, 3), (2, 2, -3)]
    ]
    assert m_value(pts, Character([-3, -1, 0])).value == 2
    assert m_value(pts, Character.zero(3)).value == 2
    # Frozen counterexample to the universal form (verified by hand):
    # chi = (1,0,-1) = 2/3 (1,-1,0) + 1/3 (1,2,-3), so m(chi) = 1, while
    # the zero character needs four rays, so m(0) = 3.
    pts = [
        SpherePoint(v)
        for v in [(2, -3, -3), (1, 0, -1), (1, -1, 0), (1, 2, -3), (-3, -1, -1), (2, 1, 3)]
    ]
    chi = Character([1, 0, -1])
    assert m_value(pts, chi).value == 1
    assert m_value(pts, Character.zero(3)).value == 3


# ---------------------------------------------------------------------------
# The join description for translation actions


def one_point_sigma(value: int) -> PolyhedralSet:
    return PolyhedralSet.from_clauses(1, [[OpenHemisphere(SpherePoint((value,)))]])


def test_join_description_trivial_action():
    desc = euclidean_join_decomposition({"a": (0, 0)}, PolyhedralSet.full(1), 0)
    assert desc.mu((1, 0)) is None
    assert desc.contains((1, 0)) is False
    assert desc.describe()["form"] == "empty"


def test_join_description_full_span():
    sigma = PolyhedralSet.full(2)
    desc = euclidean_join_decomposition({"a": (1, 0), "b": (0, 1)}, sigma, 3)
    for direction in [(1, 0), (0, -1), (2, 3), (-5, 1)]:
        assert desc.contains(direction) is True


def test_join_description_line_in_plane():
    # The infinite cyclic group translating by (1, 0); its invariant is the
    # single point (1) of the 0-sphere.
    sigma = one_point_sigma(1)
    desc = euclidean_join_decomposition({"a": (1, 0)}, sigma, 1)
    assert len(desc.span_basis) == 1 and len(desc.complement_basis) == 1
    assert desc.contains((1, 0)) is True
    assert desc.contains((1, 5)) is True  # open half circle
    assert desc.contains((-1, 2)) is False
    assert desc.contains((0, 1)) is False  # pole: purely in the complement
    assert desc.mu((3, 7)) == SpherePoint((1,))
    assert desc.mu((0, 1)) is None
    # The pointwise character computation agrees with the join formula.
    for direction in [(1, 0), (1, 5), (-1, 2), (0, 1), (0, -1), (2, -9)]:
        assert desc.contains(direction) == desc.contains_by_join(direction)


def test_join_components_are_orthogonal_split():
    desc = euclidean_join_decomposition({"a": (1, 1, 0), "b": (0, 1, 1)}, PolyhedralSet.full(2), 1)
    u, w = desc.join_components((1, 0, 0))
    assert u is not None and w is not None
    total = tuple(a + b for a, b in zip(u, w))
    assert total == (F(1), F(0), F(0))
    for b in desc.span_basis:
        assert sum(x * y for x, y in zip(w, b)) == 0


def test_join_rejects_rotations():
    from cat0sigma.actions import EuclideanIsometry, GroupAction
    from cat0sigma.spaces import EuclideanSpace

    rot = EuclideanIsometry(((0.0, -1.0), (1.0, 0.0)), (0.0, 0.0))
    action = GroupAction(EuclideanSpace(2), {"r": rot})
    with pytest.raises(NotTranslationAction):
        euclidean_join_decomposition(action, PolyhedralSet.full(2), 1)


def test_join_accepts_group_actions():
    from cat0sigma.actions import GroupAction

    action = GroupAction.euclidean_translations(2, {"a": (1, 0), "b": (0, 1)})
    desc = euclidean_join_decomposition(action, PolyhedralSet.full(2), 2)
    assert desc.contains((1, 1))
