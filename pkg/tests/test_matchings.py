"""Matching enumeration, canonical form, and union cycle types."""

import math
from itertools import permutations

import pytest
from hypothesis import given, strategies as st

from pmdg.matchings import (
    CapExceeded,
    Matching,
    all_edges,
    double_factorial,
    edge_index_map,
    enumerate_matchings,
    iter_matchings,
    matching_count,
    union_cycle_type,
)
from pmdg.partitions import Partition


def test_double_factorial_values():
    assert double_factorial(-1) == 1
    assert double_factorial(1) == 1
    assert double_factorial(3) == 3
    assert double_factorial(5) == 15
    assert double_factorial(7) == 105
    assert double_factorial(9) == 945
    assert double_factorial(11) == 10395


def test_double_factorial_rejects_even_and_small():
    with pytest.raises(ValueError):
        double_factorial(4)
    with pytest.raises(ValueError):
        double_factorial(-3)


@pytest.mark.parametrize("k", range(1, 6))
def test_enumeration_count(k):
    ms = enumerate_matchings(k)
    assert len(ms) == matching_count(k)
    assert len(set(ms)) == len(ms)


def test_count_is_factorial_quotient():
    # (2k-1)!! = (2k)! / (2^k k!)
    for k in range(1, 9):
        assert matching_count(k) == math.factorial(2 * k) // (2**k * math.factorial(k))


def test_enumeration_is_lexicographic():
    ms = enumerate_matchings(3)
    assert ms == sorted(ms)
    assert ms[0] == ((0, 1), (2, 3), (4, 5))


def test_enumeration_cap():
    with pytest.raises(CapExceeded) as ei:
        list(iter_matchings(8))
    assert ei.value.what == "k"
    assert ei.value.value == 8
    assert ei.value.cap == 7


def test_matching_canonical_form():
    m = Matching([(3, 2), (1, 0)])
    assert m == ((0, 1), (2, 3))
    assert m.n_vertices == 4


def test_matching_validation():
    with pytest.raises(ValueError):
        Matching([(0, 0), (1, 2)])
    with pytest.raises(ValueError):
        Matching([(0, 1), (1, 2)])
    # vertex set must be exactly 0..2k-1
    with pytest.raises(ValueError):
        Matching([(0, 1), (3, 4)])


def test_partner_involution():
    m = Matching([(0, 2), (1, 4), (3, 5)])
    p = m.partner()
    assert all(p[p[v]] == v and p[v] != v for v in range(6))


def test_relabel_all_permutations_small():
    m = Matching([(0, 1), (2, 3)])
    for sigma in permutations(range(4)):
        r = m.relabel(sigma)
        assert r.n_vertices == 4  # still a valid matching on the same vertices


def test_string_round_trip():
    m = Matching([(0, 4), (1, 3), (2, 5)])
    assert Matching.from_string(str(m)) == m
    big = Matching([(0, 10), (1, 11), (2, 9), (3, 8), (4, 7), (5, 6)])
    assert "." in str(big)
    assert Matching.from_string(str(big)) == big


def test_union_cycle_type_identity():
    m = Matching([(0, 1), (2, 3), (4, 5)])
    assert union_cycle_type(m, m) == (1, 1, 1)


def test_union_cycle_type_hand_cases():
    a = Matching([(0, 1), (2, 3)])
    b = Matching([(0, 2), (1, 3)])
    assert union_cycle_type(a, b) == (2,)
    c = Matching([(0, 1), (2, 4), (3, 5)])
    base = Matching([(0, 1), (2, 3), (4, 5)])
    assert union_cycle_type(base, c) == (2, 1)


def test_union_cycle_type_mismatched_sizes():
    with pytest.raises(ValueError):
        union_cycle_type(Matching([(0, 1)]), Matching([(0, 1), (2, 3)]))


@given(st.integers(0, 104), st.integers(0, 104))
def test_union_cycle_type_symmetric_and_sized(i, j):
    ms = enumerate_matchings(4)
    a, b = ms[i], ms[j]
    t = union_cycle_type(a, b)
    assert t == union_cycle_type(b, a)
    assert t.n == 4
    # parts equal to 1 are exactly the shared edges
    assert t.count(1) == len(set(a) & set(b))


def test_shares_edge_matches_cycle_type():
    ms = enumerate_matchings(3)
    for a in ms[:5]:
        for b in ms:
            assert a.shares_edge(b) == (1 in union_cycle_type(a, b))


def test_all_edges_lex_and_complete():
    es = all_edges(3)
    assert len(es) == 15
    assert es == sorted(es)
    assert es[0] == (0, 1) and es[-1] == (4, 5)
    idx = edge_index_map(3)
    assert [idx[e] for e in es] == list(range(15))


def test_disjoint_count_from_one_vertex():
    # matchings sharing no edge with a fixed one: the degree of the graph
    base = enumerate_matchings(3)[0]
    disjoint = [m for m in enumerate_matchings(3) if not base.shares_edge(m)]
    assert len(disjoint) == 8


@given(st.permutations(list(range(6))), st.integers(0, 14))
def test_relabel_preserves_union_type_with_relabelled_partner(sigma, i):
    ms = enumerate_matchings(3)
    base = ms[0]
    other = ms[i]
    t1 = union_cycle_type(base, other)
    t2 = union_cycle_type(base.relabel(sigma), other.relabel(sigma))
    assert t1 == t2
