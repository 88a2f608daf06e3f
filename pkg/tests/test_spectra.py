"""Spectra: exact eigenvalues, multiplicities, labelings, bounds.

Frozen spectra here were certified by two independent routes inside the
package (kernel ranks against quotient candidates, and for the largest
case a modular annihilation certificate); the tests below re-derive the
cheap ones and pin every route to the same frozen values.
"""

from fractions import Fraction

import pytest

from pmdg.exact import ExactMatrix
from pmdg.graphs import KneserGraph, build_graph
from pmdg.matchings import CapExceeded, double_factorial, matching_count
from pmdg.partitions import Partition
from pmdg.spectra import (
    Spectrum,
    certified_spectrum_945,
    char_poly,
    character_sum_eigenvalue,
    derangement_class_counts,
    derangement_spectrum,
    eigenvalue_multiplicity,
    integer_spectrum,
    kneser_eigenvalues,
    kneser_spectrum_direct,
    module_labeling,
    quotient_eigenvalue_candidates,
    ratio_bound,
    ratio_tightness_certificate,
    spectrum_from_candidates,
    trace_square_check,
)

M6 = Spectrum(15, ((8, 1), (2, 5), (-2, 9)))
M8 = Spectrum(105, ((60, 1), (5, 14), (2, 56), (-3, 14), (-10, 20)))
M10 = Spectrum(945, ((544, 1), (12, 315), (4, 42), (-2, 300), (-6, 252), (-68, 35)))


def test_spectrum_container():
    s = Spectrum(15, ((2, 5), (8, 1), (-2, 9)))  # order fixed on build
    assert s.eigenvalues == ((8, 1), (2, 5), (-2, 9))
    assert s.largest == 8 and s.least == -2
    assert s.multiplicity(2) == 5 and s.multiplicity(7) == 0
    assert s.moment(0) == 15 and s.moment(1) == 0 and s.moment(2) == 120
    assert s.as_dict() == {8: 1, 2: 5, -2: 9}
    assert str(s) == "{8^1, 2^5, -2^9}"


def test_char_poly_of_quotient():
    assert char_poly(ExactMatrix([[0, 8], [2, 6]])) == [-16, -6, 1]


def test_integer_spectrum_small_graphs():
    k4 = ExactMatrix([[0, 1, 1, 1], [1, 0, 1, 1], [1, 1, 0, 1], [1, 1, 1, 0]])
    assert integer_spectrum(k4).eigenvalues == ((3, 1), (-1, 3))
    c4 = ExactMatrix([[0, 1, 0, 1], [1, 0, 1, 0], [0, 1, 0, 1], [1, 0, 1, 0]])
    assert integer_spectrum(c4).eigenvalues == ((2, 1), (0, 2), (-2, 1))


def test_integer_spectrum_rejects_irrational():
    path3 = ExactMatrix([[0, 1, 0], [1, 0, 1], [0, 1, 0]])  # eigenvalues 0, +-sqrt(2)
    with pytest.raises(ArithmeticError):
        integer_spectrum(path3)


def test_eigenvalue_multiplicity():
    a = build_graph(3).adjacency_matrix()
    assert eigenvalue_multiplicity(a, 8) == 1
    assert eigenvalue_multiplicity(a, 2) == 5
    assert eigenvalue_multiplicity(a, -2) == 9
    assert eigenvalue_multiplicity(a, 3) == 0


def test_spectrum_from_candidates_error_paths():
    a = build_graph(3).adjacency_matrix()
    s = spectrum_from_candidates(a, [8, 2, -2])
    assert s == M6
    with pytest.raises(ArithmeticError):
        spectrum_from_candidates(a, [8, 2, -2, 7])  # 7 has multiplicity zero
    with pytest.raises(ArithmeticError):
        spectrum_from_candidates(a, [8, 2])  # multiplicities cannot reach n


def test_quotient_candidates_cover_spectrum():
    assert quotient_eigenvalue_candidates(build_graph(3)) == [8, 2, -2]
    c4 = quotient_eigenvalue_candidates(build_graph(4))
    assert set(c4) == {60, 5, 2, -3, -10}
    c5 = quotient_eigenvalue_candidates(build_graph(5))
    assert set(c5) == {544, 12, 4, -2, -6, -68}


def test_derangement_spectrum_small():
    assert derangement_spectrum(2).eigenvalues == ((2, 1), (-1, 2))
    assert derangement_spectrum(3) == M6
    assert derangement_spectrum(4) == M8


def test_derangement_spectrum_cap():
    with pytest.raises(CapExceeded) as ei:
        derangement_spectrum(6)
    assert ei.value.what == "spectrum"


def test_spectrum_m10_certified():
    assert derangement_spectrum(5) == M10


def test_certified_route_rejects_bad_candidates():
    g = build_graph(5)
    with pytest.raises(ArithmeticError):
        certified_spectrum_945(g, [544, 12, 4, -2, -6])  # -68 missing


@pytest.mark.parametrize("spec,k", [(M6, 3), (M8, 4), (M10, 5)])
def test_spectrum_global_invariants(spec, k):
    n = matching_count(k)
    d = spec.largest
    assert spec.n == n == sum(m for _, m in spec.eigenvalues)
    assert spec.moment(1) == 0
    assert spec.moment(2) == n * d
    # least eigenvalue is -d/(2k-2) with multiplicity 2k^2-3k
    assert Fraction(-d, 2 * k - 2) == spec.least
    assert spec.multiplicity(spec.least) == 2 * k * k - 3 * k


def test_third_moment_counts_triangles():
    g = build_graph(3)
    tri = 0
    for i in range(g.n_vertices):
        for j in g.neighbors(i):
            if j > i:
                tri += (g.rows[i] & g.rows[j]).bit_count()
    # tri counts each triangle three times (once per edge); tr A^3 is six times
    assert M6.moment(3) == 2 * tri


def test_kneser_closed_form_matches_direct_everywhere():
    for k in (1, 2, 3):
        for n in range(2 * k, 10):
            assert kneser_eigenvalues(n, k) == kneser_spectrum_direct(n, k)


def test_petersen_spectrum():
    s = kneser_eigenvalues(5, 2)
    assert s.eigenvalues == ((3, 1), (1, 5), (-2, 4))


def test_kneser_6_2_spectrum():
    # triangular graph complement: valency 6, and the positive unit
    # eigenvalue carries multiplicity nine
    s = kneser_eigenvalues(6, 2)
    assert s.eigenvalues == ((6, 1), (1, 9), (-3, 5))
    assert s == kneser_spectrum_direct(6, 2)


def test_kneser_matching_case():
    # K(2k, k) pairs each subset with its complement
    s = kneser_eigenvalues(6, 3)
    assert s.as_dict() == {1: 10, -1: 10}


def test_kneser_complete_graph_case():
    for n in range(2, 10):
        assert kneser_eigenvalues(n, 1).as_dict() == {n - 1: 1, -1: n - 1}


def test_ratio_bound_symbolic():
    for k in range(2, 9):
        from pmdg.graphs import degree_formula

        d = degree_formula(k)
        tau = Fraction(-d, 2 * k - 2)
        bound = ratio_bound(matching_count(k), d, tau)
        assert bound == double_factorial(2 * k - 3)


def test_ratio_bound_petersen_and_errors():
    assert ratio_bound(10, 3, -2) == 4
    with pytest.raises(ValueError):
        ratio_bound(10, 3, 0)
    with pytest.raises(ValueError):
        ratio_bound(10, 3, 2)


@pytest.mark.parametrize("k", [2, 3, 4])
def test_ratio_tightness_certificate(k):
    g = build_graph(k)
    cert = ratio_tightness_certificate(g)
    assert cert.holds
    assert cert.vertices_checked == g.n_vertices
    assert cert.eigenvalue == Fraction(-g.degree, 2 * k - 2)


def test_tightness_certificate_other_edges():
    g = build_graph(3)
    for e in [(0, 2), (2, 5), (1, 4)]:
        assert ratio_tightness_certificate(g, e).holds


def test_module_labeling_k3_certain():
    lab = module_labeling(3)
    assert lab.solution_count == 1
    got = {tuple(a.label): a.eigenvalue for a in lab.assignments}
    assert got == {(6,): 8, (4, 2): -2, (2, 2, 2): 2}
    assert all(a.certain for a in lab.assignments)


def test_module_labeling_k4_two_covers():
    lab = module_labeling(4)
    assert lab.solution_count == 2
    by_label = {tuple(a.label): a for a in lab.assignments}
    assert by_label[(8,)].eigenvalue == 60
    assert by_label[(6, 2)].eigenvalue == -10
    assert by_label[(4, 2, 2)].eigenvalue == 2
    # the two 14-dimensional modules swap between 5 and -3 across covers
    for lbl in ((4, 4), (2, 2, 2, 2)):
        a = by_label[lbl]
        assert not a.certain
        assert a.candidates == (5, -3)
        assert a.eigenvalue is None


def test_module_labeling_k5_unique():
    lab = module_labeling(5)
    assert lab.solution_count == 1
    got = {tuple(a.label): a.eigenvalue for a in lab.assignments}
    assert got == {
        (10,): 544,
        (8, 2): -68,
        (6, 4): 12,
        (6, 2, 2): 12,
        (4, 4, 2): -6,
        (4, 2, 2, 2): -2,
        (2, 2, 2, 2, 2): 4,
    }


def test_labeling_dimensions_cover_multiplicities():
    for k in (3, 4, 5):
        lab = module_labeling(k)
        for value, mult in lab.spectrum.eigenvalues:
            dim_total = sum(
                a.dimension for a in lab.assignments
                if a.certain and a.eigenvalue == value
            )
            uncertain = [a for a in lab.assignments if not a.certain]
            if not uncertain:
                assert dim_total == mult
            else:
                assert dim_total <= mult


@pytest.mark.parametrize("k", [2, 3, 4])
def test_trace_square_identity(k):
    rep = trace_square_check(k)
    assert rep.identity_holds
    assert rep.lhs == rep.rhs == matching_count(k) * derangement_spectrum(k).largest


def test_strict_bound_k3_equality_is_reported():
    # |2| equals 8/(2k-2) exactly, so the strict form genuinely fails here
    rep = trace_square_check(3)
    assert not rep.all_strict
    line = next(ln for ln in rep.lines if tuple(ln.label) == (2, 2, 2))
    assert not line.exempt
    assert line.bound == 2
    assert line.candidates == (2,)
    assert not line.strict_ok


def test_strict_bound_k4_holds():
    rep = trace_square_check(4)
    assert rep.all_strict
    for line in rep.lines:
        if tuple(line.label) in ((8,), (6, 2)):
            assert line.exempt
        else:
            assert line.strict_ok
            assert all(abs(v) < line.bound for v in line.candidates)


def test_trace_square_k2_vacuous():
    rep = trace_square_check(2)
    assert rep.identity_holds
    assert rep.all_strict  # nothing outside the two exempt labels


def test_derangement_census_group_size():
    for k in (2, 3, 4):
        census = derangement_class_counts(k)
        total = sum(census.values())
        # permutations sending the base matching to a disjoint one
        from math import factorial

        assert total == build_graph(k).degree * 2**k * factorial(k)
        assert all(t.n == 2 * k for t in census)


def test_census_k3_frozen():
    census = {tuple(t): c for t, c in derangement_class_counts(3).items()}
    assert census == {
        (2, 2, 1, 1): 24, (3, 2, 1): 48, (4, 1, 1): 72, (5, 1): 96,
        (3, 1, 1, 1): 16, (3, 3): 32, (6,): 64, (2, 2, 2): 8, (4, 2): 24,
    }


def test_character_sums_k3():
    census = derangement_class_counts(3)
    expected = {(6,): (384, 8), (4, 2): (-96, -2), (2, 2, 2): (96, 2)}
    for lbl, (raw, value) in expected.items():
        r = character_sum_eigenvalue(3, Partition(lbl), census)
        assert r.raw_sum == raw
        assert r.group_elements == 384
        assert r.calibrated == value
    # the d/(2^k k!) prefactor would give d^2 on the trivial module
    triv = character_sum_eigenvalue(3, Partition([6]), census)
    assert triv.rescaled == 64 != 8


def test_character_sums_k4_resolve_the_ambiguity():
    census = derangement_class_counts(4)
    assert len(census) == 19
    values = {}
    for a in module_labeling(4).assignments:
        r = character_sum_eigenvalue(4, Partition(a.label), census)
        values[tuple(a.label)] = r.calibrated
        assert r.calibrated in a.candidates
    assert values[(4, 4)] == 5
    assert values[(2, 2, 2, 2)] == -3
    assert values[(8,)] == 60 and values[(6, 2)] == -10 and values[(4, 2, 2)] == 2


def test_character_sum_trace_identity():
    # sum of dim * eigenvalue over all modules is the trace of the
    # adjacency matrix: zero (1*8 + 9*(-2) + 5*2)
    census = derangement_class_counts(3)
    from pmdg.characters import hook_dimension

    total = sum(
        hook_dimension(lbl) * character_sum_eigenvalue(3, lbl, census).calibrated
        for lbl in (Partition([6]), Partition([4, 2]), Partition([2, 2, 2]))
    )
    assert total == 0
