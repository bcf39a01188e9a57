from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from chowkit import linalg

small = st.integers(-4, 4)


def matrices(rows, cols):
    return st.lists(st.lists(small, min_size=cols, max_size=cols), min_size=rows, max_size=rows)


def sparse_rows(m):
    return [linalg.dense_to_sparse(row) for row in m]


def test_as_fraction_rejects_floats():
    with pytest.raises(TypeError):
        linalg.as_fraction(0.5)
    assert linalg.as_fraction("3/4") == Fraction(3, 4)


def test_vec_drops_zeros():
    assert linalg.vec({0: 0, 2: 3}) == {2: Fraction(3)}


def test_axpy_in_place():
    y = {0: Fraction(1)}
    linalg.axpy(y, 2, {0: Fraction(-1, 2), 3: Fraction(1)})
    assert y == {3: Fraction(2)}


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 5).flatmap(lambda r: st.integers(1, 5).flatmap(lambda c: matrices(r, c))))
def test_rank_matches_sympy(m):
    assert linalg.rank(sparse_rows(m)) == sympy.Matrix(m).rank()


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 5).flatmap(lambda r: matrices(r, 4)))
def test_kernel_vectors_are_relations(m):
    rows = sparse_rows(m)
    ker = linalg.kernel(rows)
    assert len(ker) == len(rows) - linalg.rank(rows)
    for comb in ker:
        total = {}
        for i, c in comb.items():
            linalg.axpy(total, c, rows[i])
        assert not total


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 4).flatmap(lambda n: matrices(n, n)))
def test_determinant_and_inverse_match_sympy(m):
    d = linalg.determinant(m)
    assert d == Fraction(int(sympy.Matrix(m).det()))
    if d:
        inv = linalg.matrix_inverse(m)
        expected = sympy.Matrix(m).inv()
        assert [[Fraction(int(x.p), int(x.q)) for x in expected.row(i)] for i in range(len(m))] == inv
    else:
        with pytest.raises(ZeroDivisionError):
            linalg.matrix_inverse(m)


@settings(max_examples=60, deadline=None)
@given(matrices(3, 4), st.lists(small, min_size=3, max_size=3))
def test_solve_reconstructs_target(m, coeffs):
    rows = sparse_rows(m)
    target = {}
    for c, r in zip(coeffs, rows):
        linalg.axpy(target, c, r)
    sol = linalg.solve(rows, target)
    assert sol is not None
    back = {}
    for i, c in sol.items():
        linalg.axpy(back, c, rows[i])
    assert back == target


def test_solve_outside_span():
    assert linalg.solve([{0: Fraction(1)}], {1: Fraction(1)}) is None


def test_echelon_coordinates():
    e = linalg.Echelon()
    e.add({0: Fraction(1), 1: Fraction(1)})
    e.add({1: Fraction(1)})
    assert e.contains({0: Fraction(2)})
    assert e.coordinates({2: Fraction(1)}) is None


def test_format_fraction():
    assert linalg.format_fraction(Fraction(-3, 6)) == "-1/2"
    assert linalg.format_fraction(Fraction(4)) == "4"
