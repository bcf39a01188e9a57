from fractions import Fraction
from math import comb, factorial, prod

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from chowkit.bb import (DegenerateFormError, QuadraticSpace, bogomolov_algebra, contraction,
                        fujiki_lambda, gorenstein_check, harmonic_subspace, hyperbolic, power_of_vector,
                        sample_isotropic_vectors, sampling_oracle, symmetric_algebra, weak_splitting_check)
from chowkit.gca import check_commutative_associative, check_poincare
from chowkit.models import k3_config, k3_model
from chowkit.models.checks import context

FORMS = {
    "U": [[0, 1], [1, 0]],
    "2,-2": [[2, 0], [0, -2]],
    "UxU": hyperbolic(2).gram,
    "2,-1,-1": [[2, 0, 0], [0, -1, 0], [0, 0, -1]],
}


def sym_dim(m, k):
    return comb(m + k - 1, k) if k >= 0 else 0


def bogomolov_dims(m, r):
    return tuple(sym_dim(m, k) if k <= r else sym_dim(m, 2 * r - k) for k in range(2 * r + 1))


def test_bogomolov_small_cases():
    assert bogomolov_algebra(hyperbolic(1), 1).dims == (1, 2, 1)
    assert bogomolov_algebra(hyperbolic(2), 2).dims == (1, 4, 10, 4, 1)


@pytest.mark.parametrize("name", sorted(FORMS))
@pytest.mark.parametrize("r", [1, 2, 3])
def test_bogomolov_is_gorenstein(name, r):
    V = QuadraticSpace(FORMS[name])
    A = bogomolov_algebra(V, r)
    assert A.dims == bogomolov_dims(V.m, r)
    assert gorenstein_check(A).ok
    assert check_poincare(A).ok
    assert check_commutative_associative(A).ok


@pytest.mark.parametrize("name", sorted(FORMS))
@pytest.mark.parametrize("r", [1, 2])
def test_fujiki_constant_closed_form(name, r):
    """With integral(qhat^r) = 1, lambda = (2r)! / (r! prod_k (m + 2k - 2))."""
    V = QuadraticSpace(FORMS[name])
    res = fujiki_lambda(bogomolov_algebra(V, r))
    assert res.certified
    assert res.value == Fraction(factorial(2 * r), factorial(r) * prod(V.m + 2 * k - 2 for k in range(1, r + 1)))


@pytest.mark.parametrize("name", sorted(FORMS))
@pytest.mark.parametrize("k", [2, 3, 4])
def test_harmonic_dimension(name, k):
    V = QuadraticSpace(FORMS[name])
    H = harmonic_subspace(V, k)
    assert H.dim == sym_dim(V.m, k) - sym_dim(V.m, k - 2)
    assert contraction(V, k).rank == sym_dim(V.m, k - 2)
    assert sampling_oracle(V, k, count=120, seed=3).ok


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(sorted(FORMS)), st.integers(2, 4), st.data())
def test_contraction_of_powers(name, k, data):
    V = QuadraticSpace(FORMS[name])
    x = data.draw(st.lists(st.integers(-4, 4), min_size=V.m, max_size=V.m))
    S = symmetric_algebra(V, k)
    L = contraction(V, k)
    lhs = L.apply(power_of_vector(L.algebra, x, k))
    rhs = k * (k - 1) * V.q(x) * power_of_vector(L.algebra, x, k - 2)
    assert lhs == rhs
    assert S.dim(k) == sym_dim(V.m, k)


@settings(max_examples=25, deadline=None)
@given(st.sampled_from(sorted(FORMS)), st.integers(0, 50))
def test_sampled_vectors_are_isotropic(name, seed):
    V = QuadraticSpace(FORMS[name])
    for v in sample_isotropic_vectors(V, 10, seed=seed):
        assert V.q(v) == 0 and any(v)
    assert sample_isotropic_vectors(V, 10, seed=seed) == sample_isotropic_vectors(V, 10, seed=seed)


def test_degenerate_form_rejected():
    with pytest.raises(DegenerateFormError):
        bogomolov_algebra(QuadraticSpace([[1, 1], [1, 1]]), 1)


def test_hilbert_square_fujiki_constant():
    """(2n)! / (n! 2^n) = 3 for n = 2, from the model's own integral and form."""
    for rho in (1, 2, 3):
        H = context(k3_config(rho)).hilb
        res = fujiki_lambda(H.chow, H.q)
        assert res.certified and res.value == Fraction(factorial(4), factorial(2) * 2 ** 2)


@pytest.mark.parametrize("rho", [1, 2, 3])
def test_weak_splitting_verdicts(rho):
    cfg = k3_config(rho)
    v = weak_splitting_check(k3_model(cfg), 1)
    assert v.criterion_i and v.agree
    w = weak_splitting_check(context(cfg).hilb, 2)
    assert w.criterion_i == w.criterion_ii and w.agree
