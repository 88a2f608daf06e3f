"""Rational linear algebra against sympy as the independent oracle."""

import random
from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from pmdg.exact import (
    ExactMatrix,
    integer_rank,
    integer_roots,
    poly_eval,
    solve,
)


def sympy_charpoly_ascending(rows):
    x = sympy.Symbol("x")
    poly = sympy.Matrix(rows).charpoly(x)
    coeffs = poly.all_coeffs()  # descending
    return [Fraction(str(c)) for c in reversed(coeffs)]


def test_charpoly_hand_values():
    assert ExactMatrix([[0, 2], [1, 1]]).charpoly() == [-2, -1, 1]
    # the canonical edge quotient at k=3: eigenvalues 8 and -2
    assert ExactMatrix([[0, 8], [2, 6]]).charpoly() == [-16, -6, 1]
    assert ExactMatrix([[5]]).charpoly() == [-5, 1]
    assert ExactMatrix.identity(3).charpoly() == [-1, 3, -3, 1]


small_matrix = st.integers(-6, 6)


@settings(max_examples=60, deadline=None)
@given(st.lists(st.lists(small_matrix, min_size=4, max_size=4), min_size=4, max_size=4))
def test_charpoly_matches_sympy(rows):
    assert ExactMatrix(rows).charpoly() == sympy_charpoly_ascending(rows)


@settings(max_examples=60, deadline=None)
@given(st.lists(st.lists(small_matrix, min_size=5, max_size=5), min_size=3, max_size=5))
def test_rank_matches_sympy(rows):
    assert ExactMatrix(rows).rank() == sympy.Matrix(rows).rank()


def test_rank_with_fractions():
    m = ExactMatrix([[Fraction(1, 2), Fraction(1, 3)], [Fraction(3, 2), 1]])
    assert m.rank() == sympy.Matrix([[sympy.Rational(1, 2), sympy.Rational(1, 3)],
                                     [sympy.Rational(3, 2), 1]]).rank()


def test_integer_rank_bareiss_on_structured_input():
    rng = random.Random(7)
    for _ in range(20):
        nr, nc = rng.randint(1, 6), rng.randint(1, 6)
        rows = [[rng.randint(-9, 9) for _ in range(nc)] for _ in range(nr)]
        assert integer_rank(rows) == sympy.Matrix(rows).rank()


def test_rank_equals_transpose_rank():
    rng = random.Random(11)
    for _ in range(10):
        rows = [[rng.randint(-4, 4) for _ in range(5)] for _ in range(3)]
        m = ExactMatrix(rows)
        assert m.rank() == m.transpose().rank()


def test_nullspace_vectors_annihilate():
    rows = [[1, 2, 3], [2, 4, 6], [1, 0, 1]]
    m = ExactMatrix(rows)
    basis = m.nullspace()
    assert len(basis) == m.nullity() == 1
    for v in basis:
        assert all(x == 0 for x in m.matvec(v))


def test_rref_pivots():
    m = ExactMatrix([[0, 1, 2], [0, 2, 4]])
    r, pivots = m.rref()
    assert pivots == [1]
    assert r[0] == [0, 1, 2]
    assert r[1] == [0, 0, 0]


def test_solve_feasible():
    a = ExactMatrix([[1, 1], [1, -1]])
    res = solve(a, [4, 0])
    assert res.feasible
    assert res.solution == (2, 2)
    assert a.matvec(res.solution) == [4, 0]


def test_solve_underdetermined_returns_some_solution():
    a = ExactMatrix([[1, 1, 1]])
    res = solve(a, [Fraction(5, 2)])
    assert res.feasible
    assert sum(res.solution) == Fraction(5, 2)


def test_solve_infeasible_certificate():
    a = ExactMatrix([[1, 1], [2, 2]])
    res = solve(a, [1, 3])
    assert not res.feasible
    assert res.solution is None
    assert res.inconsistent_row is not None


def test_solve_matches_sympy_on_random_square_systems():
    rng = random.Random(3)
    for _ in range(15):
        n = rng.randint(1, 5)
        rows = [[rng.randint(-5, 5) for _ in range(n)] for _ in range(n)]
        b = [rng.randint(-5, 5) for _ in range(n)]
        mine = solve(ExactMatrix(rows), b)
        theirs = sympy.Matrix(rows).gauss_jordan_solve(sympy.Matrix(b))[0] \
            if sympy.Matrix(rows).rank() == sympy.Matrix(rows).row_join(sympy.Matrix(b)).rank() \
            else None
        assert mine.feasible == (theirs is not None)
        if mine.feasible:
            assert ExactMatrix(rows).matvec(mine.solution) == [Fraction(x) for x in b]


def test_matrix_basics():
    m = ExactMatrix([[1, 2], [3, 4]])
    assert m[1, 0] == 3
    assert m.trace() == 5
    assert m.transpose().rows == [[1, 3], [2, 4]]
    assert not m.is_symmetric()
    assert m.add_scalar_diagonal(-1).rows == [[0, 2], [3, 3]]
    assert m.scale(Fraction(1, 2)).rows == [[Fraction(1, 2), 1], [Fraction(3, 2), 2]]
    assert m.mul(ExactMatrix.identity(2)) == m
    assert m.to_text() == "1 2\n3 4"


def test_matrix_shape_errors():
    with pytest.raises(ValueError):
        ExactMatrix([[1, 2], [3]])
    m = ExactMatrix([[1, 2], [3, 4]])
    with pytest.raises(ValueError):
        m.mul(ExactMatrix([[1, 2]]))
    with pytest.raises(ValueError):
        m.matvec([1])
    with pytest.raises(ValueError):
        ExactMatrix([[1, 2]]).trace()


def test_poly_eval():
    assert poly_eval([-2, -1, 1], 2) == 0
    assert poly_eval([-2, -1, 1], -1) == 0
    assert poly_eval([1], 100) == 1
    assert poly_eval([Fraction(1, 2), 1], Fraction(1, 2)) == 1


def test_integer_roots_full_split():
    # (x - 3)^2 (x + 1) = x^3 - 5x^2 + 3x + 9
    roots, residual = integer_roots([9, 3, -5, 1])
    assert roots == {3: 2, -1: 1}
    assert len(residual) == 1


def test_integer_roots_partial_split():
    # (x - 1)(x^2 + 1)
    roots, residual = integer_roots([-1, 1, -1, 1])
    assert roots == {1: 1}
    assert len(residual) == 3


def test_integer_roots_zero_roots_and_bound():
    roots, residual = integer_roots([0, 0, -4, 1])
    assert roots == {0: 2, 4: 1}
    assert len(residual) == 1
    roots, _ = integer_roots([-16, -6, 1], root_bound=8)
    assert roots == {8: 1, -2: 1}
    with pytest.raises(ValueError):
        integer_roots([0, 0])


def test_integer_roots_rational_input_scaling():
    # same roots after clearing denominators
    roots, residual = integer_roots([Fraction(-1, 2), 0, Fraction(1, 2)])
    assert roots == {1: 1, -1: 1}
    assert len(residual) == 1


@settings(max_examples=40, deadline=None)
@given(st.lists(st.integers(-4, 4), min_size=2, max_size=5))
def test_integer_roots_reconstruct(coeffs):
    if all(c == 0 for c in coeffs):
        return
    roots, residual = integer_roots(coeffs)
    for r, mult in roots.items():
        assert poly_eval(coeffs, r) == 0
    # degree bookkeeping: roots plus residual degree account for the whole
    deg = len([c for c in _strip(coeffs)]) - 1
    assert sum(roots.values()) + len(residual) - 1 == deg


def _strip(coeffs):
    out = list(coeffs)
    while len(out) > 1 and out[-1] == 0:
        out.pop()
    return out
