"""Piecewise invariant formulas for tree actions and MFPR groups."""

import math
import random
from fractions import Fraction as F

import pytest

from cat0sigma.errors import DegreeOutOfRange, InvalidChain
from cat0sigma.sphere import Character, SpherePoint
from cat0sigma.treesigma import (
    EMPTY,
    SINGLETON,
    WHOLE_BOUNDARY,
    BrownReport,
    GraphOfGroupsSummary,
    MFPRData,
    brown_consistency,
    dynamical_sigma_fixed_end,
    dynamical_sigma_mfpr,
    dynamical_sigma_no_fixed_end,
    generate_mfpr_data,
    generate_summary,
    mfpr_lengths,
    mfpr_summary,
    sigma_table,
)

INF = math.inf


def test_no_fixed_end_formula():
    s = GraphOfGroupsSummary(4, 2, False)
    assert dynamical_sigma_no_fixed_end(s, 1) == WHOLE_BOUNDARY
    assert dynamical_sigma_no_fixed_end(s, 2) == WHOLE_BOUNDARY
    assert dynamical_sigma_no_fixed_end(s, 3) == EMPTY
    with pytest.raises(DegreeOutOfRange):
        dynamical_sigma_no_fixed_end(s, 5)
    with pytest.raises(InvalidChain):
        dynamical_sigma_fixed_end(s, 1)


def test_fixed_end_formula():
    s = GraphOfGroupsSummary(3, 1, True, 2)
    values = [dynamical_sigma_fixed_end(s, n) for n in range(4)]
    assert values == [WHOLE_BOUNDARY, WHOLE_BOUNDARY, SINGLETON, EMPTY]
    with pytest.raises(DegreeOutOfRange):
        dynamical_sigma_fixed_end(s, 4)
    # cl equal to the stabilizer length collapses the singleton range.
    s2 = GraphOfGroupsSummary(3, 1, True, 1)
    assert [dynamical_sigma_fixed_end(s2, n) for n in range(4)] == [
        WHOLE_BOUNDARY,
        WHOLE_BOUNDARY,
        EMPTY,
        EMPTY,
    ]


def test_chain_validation():
    with pytest.raises(InvalidChain):
        GraphOfGroupsSummary(2, 3, False)
    with pytest.raises(InvalidChain):
        GraphOfGroupsSummary(3, 1, True, 5)
    with pytest.raises(InvalidChain):
        GraphOfGroupsSummary(3, 1, True, None)
    GraphOfGroupsSummary(INF, 2, True, INF)  # infinite lengths are values


def test_sigma_table_partitions_the_range(rng):
    for _ in range(60):
        s = generate_summary(rng)
        table = sigma_table(s)
        assert [n for n, _ in table] == list(range(int(s.fl_group) + 1))
        whole = [n for n, v in table if v == WHOLE_BOUNDARY]
        single = [n for n, v in table if v == SINGLETON]
        empty = [n for n, v in table if v == EMPTY]
        assert whole == list(range(int(s.fl_stabilizers) + 1))
        if s.has_fixed_end:
            assert single == list(range(int(s.fl_stabilizers) + 1, int(s.cl_character) + 1))
        else:
            assert single == []
        assert len(whole) + len(single) + len(empty) == len(table)


def test_mfpr_lengths_frozen_examples():
    # Empty complement: every length is infinite.
    empty = MFPRData(2, [], Character([1, 0]))
    lengths = mfpr_lengths(empty)
    assert (lengths.fl_group, lengths.cl_character, lengths.fl_base) == (INF, INF, INF)

    # One dimensional pair with chi = (-1).
    pair = MFPRData(1, [SpherePoint((1,)), SpherePoint((-1,))], Character([-1]))
    lengths = mfpr_lengths(pair)
    assert (lengths.fl_group, lengths.cl_character, lengths.fl_base) == (1, 1, 1)

    # Three rays at mutual 120 degrees, chi = -v1.
    trio = MFPRData(
        2,
        [SpherePoint((1, 0)), SpherePoint((0, 1)), SpherePoint((-1, -1))],
        Character([-1, 0]),
    )
    lengths = mfpr_lengths(trio)
    assert (lengths.fl_group, lengths.cl_character, lengths.fl_base) == (2, 1, 1)


def test_mfpr_piecewise_values():
    trio = MFPRData(
        2,
        [SpherePoint((1, 0)), SpherePoint((0, 1)), SpherePoint((-1, -1))],
        Character([-1, 0]),
    )
    assert dynamical_sigma_mfpr(trio, 0) == WHOLE_BOUNDARY
    assert dynamical_sigma_mfpr(trio, 1) == WHOLE_BOUNDARY
    assert dynamical_sigma_mfpr(trio, 2) == EMPTY
    with pytest.raises(DegreeOutOfRange):
        dynamical_sigma_mfpr(trio, 3)

    empty = MFPRData(2, [], Character([1, 0]))
    for n in range(6):
        assert dynamical_sigma_mfpr(empty, n) == WHOLE_BOUNDARY


def test_mfpr_matches_fixed_end_formula(rng):
    for _ in range(40):
        data = generate_mfpr_data(rng)
        summary = mfpr_summary(data)
        horizon = 8 if summary.fl_group == INF else int(summary.fl_group)
        for n in range(0, min(horizon, 8) + 1):
            assert dynamical_sigma_mfpr(data, n) == dynamical_sigma_fixed_end(summary, n)


def test_antipodal_pair_detection_and_convention(rng):
    data = MFPRData(1, [SpherePoint((1,)), SpherePoint((-1,))], Character([-1]))
    assert data.has_antipodal_pair()
    for _ in range(30):
        gen = generate_mfpr_data(rng)
        assert not gen.has_antipodal_pair()
        from cat0sigma.sphere import m_value

        assert m_value(gen.complement, Character.zero(gen.k)).value >= 2


def test_brown_consistency():
    # A single rooted tree with chi = (0, -1) covers A = {(0, 1)}.
    A = [SpherePoint((0, 1))]
    report = brown_consistency(A, [Character([0, -1])])
    assert report.consistent and report.uncovered == ()

    extra = [SpherePoint((0, 1)), SpherePoint((1, 0))]
    report = brown_consistency(extra, [Character([0, -1])])
    assert report.consistent
    assert report.uncovered == (SpherePoint((1, 0)),)

    report = brown_consistency([], [])
    assert report.consistent and report.uncovered == ()

    missing = brown_consistency([SpherePoint((1, 0))], [Character([0, -1])])
    assert not missing.consistent
    assert missing.missing == (SpherePoint((0, 1)),)


def test_mfpr_json_round_trip():
    trio = MFPRData(
        2,
        [SpherePoint((1, 0)), SpherePoint((0, 1)), SpherePoint((-1, -1))],
        Character([F(-1), F(0)]),
    )
    again = MFPRData.from_json(trio.to_json())
    assert again == trio
