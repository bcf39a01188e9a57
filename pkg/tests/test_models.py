import pytest
import sympy

from chowkit.gca import integrate
from chowkit.models import (ConfigError, CurveConfig, K3Config, k3_blown_at_point, k3_config,
                            k3_model, p3_blown_along_curve, surface_cube, surface_square,
                            surface_times_hilbert_square)

t, q = sympy.symbols("t q")


def poincare(A):
    return sum(n * t ** d for d, n in enumerate(A.dims))


def k3_poincare():
    return 1 + 22 * t + t ** 2


def hilbert_square_poincare(b=(1, 22, 1)):
    """Coefficient of q^2 in prod_k prod_i (1 - t^(k-1+i) q^k)^(-b_i), t of complex degree."""
    series = 1
    for k in (1, 2):
        for i, bi in enumerate(b):
            series *= sum((t ** (k - 1 + i) * q ** k) ** n for n in range(3)) ** bi
    return sympy.expand(series).coeff(q, 2)


def test_hilbert_square_betti_oracle():
    assert sympy.Poly(hilbert_square_poincare(), t).all_coeffs()[::-1] == [1, 23, 276, 23, 1]


def test_k3_examples():
    M = k3_model(K3Config([[2]], [[0, 1], [1, 0]]))
    assert M.chow.dims == (1, 1, 1) and M.coh.dims == (1, 3, 1)
    a = M.classes["a1"]
    assert a * a == 2 * M.classes["o"]
    assert M.classes["c2(T_S)"] == 24 * M.classes["o"]
    assert all(o.ok for o in M.check().values())


def test_k3_config_validation():
    with pytest.raises(ConfigError):
        K3Config([[1]])
    with pytest.raises(ConfigError):
        K3Config([[2]], [[1, 0], [0, 1]])
    with pytest.raises(ConfigError):
        surface_square(K3Config([[2]], [[0, 1], [1, 0]]))
    with pytest.raises(ConfigError):
        k3_config(4)
    with pytest.raises(ConfigError):
        CurveConfig(1, 3)


def test_k3_default_lattice(cfg):
    M = k3_model(cfg)
    assert cfg.b2 == 22
    assert sympy.expand(poincare(M.coh) - k3_poincare()) == 0
    assert M.chow.dims == (1, cfg.rho, 1)
    assert all(o.ok for o in M.check().values())


def test_k3_blown_at_point(cfg):
    M = k3_blown_at_point(cfg)
    e = M.classes["[E]"]
    assert integrate(e * e) == -1
    assert M.coh.dims == (1, 23, 1)
    assert M.chow.dims == (1, cfg.rho + 1, 2)
    assert all(o.ok for o in M.check().values())


def test_square(ctx):
    M = ctx.square
    D = M.chow
    delta = M.classes["[Delta]"]
    assert integrate(delta * delta) == 24
    assert M.maps["pr1_*"].apply(delta) == ctx.surface.chow.one()
    assert M.maps["swap"].apply(delta) == delta
    assert M.maps["Delta^*"].apply(delta) == 24 * ctx.surface.classes["o"]
    o = ctx.surface.classes["o"]
    push = M.maps["Delta_*"]
    assert push.apply(ctx.surface.chow.one()) == delta
    assert push.apply(o) == D.box(o, o)
    for a in ctx.surface.chow.basis_elements(1):
        assert push.apply(a) == D.box(a, o) + D.box(o, a)
        # the diagonal restricts products: [Delta] (a x b) = Delta_*(ab)
        for b in ctx.surface.chow.basis_elements(1):
            assert delta * D.box(a, b) == push.apply(a * b)
    assert sympy.expand(poincare(M.coh) - k3_poincare() ** 2) == 0
    assert all(o.ok for o in M.check(associativity=True).values())


def test_square_diagonal_in_cohomology(ctx):
    M = ctx.square
    d = M.classes["[Delta]_coh"]
    assert integrate(d * d) == 24
    assert M.cycle.apply(M.classes["[Delta]"]) == d
    assert M.maps["Delta^*_coh"].apply(d) == 24 * ctx.surface.classes["pt"]


def test_blown_up_square(ctx):
    Y = ctx.curly
    assert sympy.expand(poincare(Y.coh) - k3_poincare() ** 2 - t * k3_poincare()) == 0
    assert Y.chow.dims == (1, ctx.surface.chow.dim(1) * 2 + 1, Y.chow.dim(2), Y.chow.dim(1), 1)
    e = Y.classes["[E]"]
    assert e * e == -Y.classes["eps^*[Delta]"]
    assert integrate(e ** 4) == integrate(Y.cycle.apply(e) ** 4)
    sigma = Y.maps["sigma"]
    assert sigma.apply(e) == e
    assert sigma.apply(Y.classes["p^*o"]) == Y.classes["q^*o"]
    assert all(o.ok for o in Y.check().values())


def test_hilbert_square(ctx):
    H = ctx.hilb
    assert sympy.expand(poincare(H.coh) - hilbert_square_poincare()) == 0
    e = H.classes["[Ebar]"]
    assert integrate(e ** 4) == 192
    for a in ctx.surface.chow.basis_elements(1):
        ia = H.maps["iota"].apply(a)
        qa = integrate(a * a)
        assert integrate(ia ** 4) == 3 * qa ** 2
        # polarized Fujiki relation: integral(x^2 y^2) = q(x) q(y) + 2 q(x, y)^2
        assert integrate(ia * ia * e * e) == qa * -8
        assert integrate(ia * e ** 3) == 0
    assert integrate(H.classes["iota(o)"] * H.classes["iota(o)"]) == 1
    assert all(o.ok for o in H.check().values())


def test_incidence_base_change_matches_cohomology(ctx):
    inc = ctx.inc
    Y = ctx.curly
    for d in range(Y.chow.top + 1):
        for y in Y.chow.basis_elements(d):
            hy = Y.cycle.apply(y)
            for which in ("p", "q"):
                assert inc.sy_cycle(inc.jprime_push(y, which), d + 2) == inc.jprime_push_coh(hy, which)
            assert inc.x_cycle(inc.j_push(y), d + 2) == inc.j_push_coh(hy)


def test_incidence_symbols_are_the_unfactorable_classes(ctx):
    """Only classes with no positive-degree p^* factor stay symbolic."""
    inc, Y, S = ctx.inc, ctx.curly.chow, ctx.surface.chow
    extra = {0: [], 1: ["i_*(1)"], 2: ["eps^*([Delta])"]}
    for d in range(Y.top + 1):
        got = {Y.labels(d)[n] for n in inc.irreducible(d, "p")}
        want = set(extra.get(d, []))
        if d <= 2:
            want |= {f"eps^*(1⊠{lab})" for lab in S.labels(d)}
        assert got == want


def test_surface_times_hilbert_square_dims(cfg):
    T = surface_times_hilbert_square(cfg)
    assert sympy.expand(poincare(T.coh) - k3_poincare() * hilbert_square_poincare()) == 0


def test_cube_relation(cfg):
    M = surface_cube(cfg)
    cube = M.parts["cube"]
    assert cube.coh_relation().is_zero()
    rel = cube.relation()
    assert rel and cube.cycle(rel).is_zero()


@pytest.mark.parametrize("genus,degree", [(2, 5), (4, 7)])
def test_p3_blown_along_curve(genus, degree):
    M = p3_blown_along_curve(CurveConfig(genus, degree))
    assert all(o.ok for o in M.check().values())
    w = M.classes["witness"]
    assert not w.is_zero() and M.cycle.apply(w).is_zero()
