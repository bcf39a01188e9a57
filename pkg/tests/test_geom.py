from fractions import Fraction
from math import comb

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from chowkit.gca import (AlgebraError, Presentation, build_algebra, check_commutative_associative,
                         check_poincare, integrate)
from chowkit.geom import (BlowupData, ProductAlgebra, blowup, blowup_identities_check, dch_dimensions,
                          flop_blowup, flop_inner_identity, jouanolou_dimensions, mukai_flop_check,
                          product_dch_check, projective_bundle, projective_space)
from chowkit.maps import AlgebraHom, PushforwardMap, make_hom
from chowkit.models import CurveConfig, p3_blown_along_curve
from chowkit.models.surfaces import point_model

t = sympy.Symbol("t")


def poincare_polynomial(A):
    return sum(n * t ** d for d, n in enumerate(A.dims))


@settings(max_examples=20, deadline=None)
@given(st.integers(0, 4), st.integers(0, 4))
def test_product_dims_are_kunneth(a, b):
    A, B = projective_space(a, "x"), projective_space(b, "y")
    P = ProductAlgebra(A, B)
    assert sympy.expand(poincare_polynomial(P) - poincare_polynomial(A) * poincare_polynomial(B)) == 0
    assert product_dch_check(A, B, P).ok
    assert check_poincare(P).ok


def test_product_box_and_projections():
    A, B = projective_space(1, "x"), projective_space(2, "y")
    P = ProductAlgebra(A, B)
    x, y = A.generator("x"), B.generator("y")
    assert integrate(P.box(x, y ** 2)) == 1
    assert P.pr1_pull.apply(x) * P.pr2_pull.apply(y) == P.box(x, y)
    assert P.pr1_push.apply(P.box(x, y ** 2)) == x
    assert check_commutative_associative(P).ok


@settings(max_examples=15, deadline=None)
@given(st.integers(1, 3), st.integers(1, 3))
def test_projective_bundle_leray_hirsch(n, rank):
    B = projective_space(n, "k")
    k = B.generator("k")
    # F = O(1)^rank has c_p = binom(rank, p) k^p
    chern = [comb(rank, p) * k ** p for p in range(1, min(rank, n) + 1)]
    E = projective_bundle(B, chern, rank)
    expected = sympy.expand(poincare_polynomial(B) * sum(t ** i for i in range(rank)))
    assert sympy.expand(poincare_polynomial(E)) == expected
    assert E.grothendieck_relation().is_zero()
    assert check_commutative_associative(E).ok


def test_tangent_bundle_of_plane():
    B = projective_space(2, "k")
    k = B.generator("k")
    E = projective_bundle(B, [3 * k, 3 * k ** 2], 2)
    h, kE = E.h, E.eta_pull.apply(k)
    assert h * h == 3 * h * kE - 3 * kE * kE


def test_bundle_rejects_bad_chern():
    B = projective_space(2, "k")
    with pytest.raises(AlgebraError):
        projective_bundle(B, [B.generator("k") ** 2], 2)


def plane_blown_up_at_point():
    X = projective_space(2, "h")
    P = point_model()
    pt = X.generator("h") ** 2
    j_pull = AlgebraHom(X, P, lambda d, i: {0: 1} if d == 0 else {}, "j^*")
    j_push = PushforwardMap(P, X, 2, lambda d, i: pt.vec, "j_*", companion=j_pull)
    return blowup(BlowupData(X, P, 2, j_pull, j_push, [P.zero(1)]))


def test_blowup_of_plane_matches_first_hirzebruch_surface():
    Y = plane_blown_up_at_point()
    assert Y.dims == (1, 2, 1)
    F1 = build_algebra(Presentation.make("F1", [("H", 1), ("E", 1)], 2,
                                         [{(1, 1): 1}, {(2, 0): 1, (0, 2): 1}], {(2, 0): 1}))
    iso = make_hom(F1, Y, {"H": Y.eps_pull.apply(Y.ambient.generator("h")), "E": Y.exceptional_class})
    assert all(iso.rank(d) == Y.dim(d) == F1.dim(d) for d in range(3))
    for d in range(3):
        for i in range(F1.dim(d)):
            x = F1.basis(d, i)
            if d == 2:
                assert integrate(iso.apply(x)) == integrate(x)
    assert blowup_identities_check(Y).ok
    assert jouanolou_dimensions(Y).ok


@pytest.mark.parametrize("genus,degree", [(2, 5), (3, 4), (2, 1)])
def test_curve_blowup_intersection_numbers(genus, degree):
    """E^3 = -deg N and eps^*D . E^2 = -D . C for a curve C in a threefold."""
    M = p3_blown_along_curve(CurveConfig(genus, degree))
    e, l = M.classes["[E]"], M.classes["eps^*l"]
    deg_normal = 4 * degree + 2 * genus - 2
    assert integrate(e ** 3) == -deg_normal
    assert integrate(l * e * e) == -degree
    assert integrate(l * l * e) == 0
    assert integrate(e ** 3) == integrate(M.cycle.apply(e) ** 3)
    assert M.chow.dims == (1, 2, 3, 1)
    assert M.coh.dims == (1, 2, 2, 1)
    assert jouanolou_dimensions(M.coh).ok
    assert blowup_identities_check(M.chow).ok and blowup_identities_check(M.coh).ok


@pytest.mark.parametrize("r", [1, 2, 3, 4])
def test_mukai_flop(r):
    out = mukai_flop_check(r)
    assert out.ok and out.data["e_part_zero"]
    assert flop_inner_identity(r).ok


@pytest.mark.parametrize("r,m", [(2, 37), (3, Fraction(-5, 3))])
def test_flop_expansion_at_unsampled_values(r, m):
    """Direct evaluation away from the interpolation nodes."""
    Y = flop_blowup(r, m)
    alpha = Y.ambient.basis(1, 0)
    diff = (Y.eps_pull.apply(alpha) + m * Y.exceptional_class) ** (r + 1) - Y.eps_pull.apply(alpha ** (r + 1))
    assert diff.is_zero()
    assert check_commutative_associative(Y).ok


def test_flop_expansion_needs_the_chern_data():
    """With the normal bundle's Chern classes dropped the E-part survives."""
    from chowkit.geom import flop_ambient
    r, m = 2, 3
    X, B, jp, js = flop_ambient(r, m)
    Y = blowup(BlowupData(X, B, r, jp, js, [B.zero(1)], B.zero(2)), validate=False)
    alpha = X.basis(1, 0)
    diff = (Y.eps_pull.apply(alpha) + m * Y.exceptional_class) ** (r + 1) - Y.eps_pull.apply(alpha ** (r + 1))
    assert not diff.is_zero()


def test_dch_dimensions_of_projective_space():
    assert dch_dimensions(projective_space(3, "l")) == (1, 1, 1, 1)
