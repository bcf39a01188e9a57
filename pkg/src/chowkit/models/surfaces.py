"""K3 surfaces, a K3 blown up at a point, and P^3 blown up along a curve."""
from __future__ import annotations


from ..bb import QuadraticSpace
from ..gca import Presentation, PresentedAlgebra, build_algebra
from ..geom import BlowupData, blowup, blowup_map, projective_space
from ..maps import AlgebraHom, PushforwardMap, identity, make_hom
from .base import CurveConfig, K3Config, VarietyModel


def _picard_names(rho: int) -> list:
    return [f"a{i + 1}" for i in range(rho)]


def _surface_presentation(name, gens, gram, point, extra=()):
    """Classes in degree 1 multiply to ``<x, y> point``."""
    rels = []
    n = len(gens) + 1 + len(extra)
    for i in range(len(gens)):
        for j in range(i, len(gens)):
            m = [0] * n
            m[i] += 1
            m[j] += 1
            pt = [0] * n
            pt[len(gens)] = 1
            rel = {tuple(m): 1}
            if gram[i][j]:
                rel[tuple(pt)] = -gram[i][j]
            rels.append(rel)
    generators = [(g, 1) for g in gens] + [(point, 2)] + [(e, 2) for e in extra]
    integral = {}
    for k in range(1 + len(extra)):
        m = [0] * n
        m[len(gens) + k] = 1
        integral[tuple(m)] = 1
    return Presentation.make(name, generators, 2, rels, integral, poincare=not extra)


def k3_chow(cfg: K3Config) -> PresentedAlgebra:
    """``Q + Pic_Q + Q[o]`` with ``a * b = <a, b> [o]``."""
    return build_algebra(_surface_presentation("CH(S)", _picard_names(cfg.rho), cfg.picard, "o"))


def k3_coh(cfg: K3Config) -> PresentedAlgebra:
    """``Q + (Pic + T) + Q pt`` with the cup product from both Gram blocks."""
    names = _picard_names(cfg.rho) + [f"t{i + 1}" for i in range(cfg.t)]
    return build_algebra(_surface_presentation("H(S)", names, cfg.full_gram, "pt"))


def k3_model(cfg: K3Config) -> VarietyModel:
    chow, coh = k3_chow(cfg), k3_coh(cfg)
    images = {n: coh.generator(n) for n in _picard_names(cfg.rho)}
    images["o"] = coh.generator("pt")
    cycle = make_hom(chow, coh, images, "cl")
    o = chow.generator("o")
    cls = {"o": o, "c2(T_S)": 24 * o, "pt": coh.generator("pt")}
    for n in _picard_names(cfg.rho):
        cls[n] = chow.generator(n)
    cls["tau"] = coh.generator("t1")
    cls["tau'"] = coh.generator("t2")
    return VarietyModel(
        name=f"K3 (rho={cfg.rho})", dim=2, chow=chow, coh=coh, cycle=cycle, point_class=o,
        q=QuadraticSpace(cfg.picard, _picard_names(cfg.rho)), classes=cls,
        axioms=["CH^2 is spanned by [o] in the modeled subring"],
        relations=["a * b = <a, b> [o] for divisor classes a, b",
                   "c_2(T_S) = 24 [o]"],
        parts={"config": cfg})


def point_model() -> PresentedAlgebra:
    return build_algebra(Presentation.make("pt", [], 0, [], {(): 1}, poincare=True))


def k3_blown_at_point(cfg: K3Config) -> VarietyModel:
    """Blow-up of S at a point p with ``[p] != [o]`` in CH^2 (model axiom)."""
    names = _picard_names(cfg.rho)
    X = build_algebra(_surface_presentation("CH(S)+[p]", names, cfg.picard, "o", extra=("p",)))
    Hs = k3_coh(cfg)
    P = point_model()
    c_images = {n: Hs.generator(n) for n in names}
    c_images["o"] = Hs.generator("pt")
    c_images["p"] = Hs.generator("pt")
    cycle_X = make_hom(X, Hs, c_images, "cl")

    def to_point(A):
        return AlgebraHom(A, P, lambda d, i: {0: 1} if d == 0 else {}, "j^*")

    chow_data = BlowupData(X, P, 2, to_point(X),
                           PushforwardMap(P, X, 2, lambda d, i: X.generator("p").vec, "j_*"),
                           [P.zero(1)], name="CH(S^)")
    coh_data = BlowupData(Hs, P, 2, to_point(Hs),
                          PushforwardMap(P, Hs, 2, lambda d, i: Hs.generator("pt").vec, "j_*"),
                          [P.zero(1)], name="H(S^)")
    Y, HY = blowup(chow_data), blowup(coh_data)
    cycle = blowup_map(Y, HY, cycle_X, identity(P), "cl")
    e = Y.exceptional_class
    eps = Y.eps_pull
    E = Y.exceptional
    q_class = Y.i_push_element(E.h)
    cls = {"[E]": e, "eps^*o": eps.apply(X.generator("o")), "eps^*[p]": eps.apply(X.generator("p")),
           "[q]": q_class}
    for n in names:
        cls[n] = eps.apply(X.generator(n))
    return VarietyModel(
        name=f"K3 blown up at a point (rho={cfg.rho})", dim=2, chow=Y, coh=HY, cycle=cycle,
        point_class=eps.apply(X.generator("o")), q=None, classes=cls,
        axioms=["[p] != [o] in CH^2(S)", "the class [q] of a point of E equals eps^*[p]"],
        relations=["[E]^2 = -[q]"],
        parts={"config": cfg, "ambient": X, "cycle_ambient": cycle_X})


def _curve_chow(cfg: CurveConfig) -> PresentedAlgebra:
    g, d = cfg.genus, cfg.degree
    return build_algebra(Presentation.make(
        "CH(B)", [("lB", 1), ("KB", 1)], 1, [], {(1, 0): d, (0, 1): 2 * g - 2}))


def _curve_coh() -> PresentedAlgebra:
    return build_algebra(Presentation.make("H(B)", [("pt", 1)], 1, [], {(1,): 1}, poincare=True))


def p3_blown_along_curve(cfg: CurveConfig) -> VarietyModel:
    """P^3 blown up along a curve B of genus g with ``[B] = d l^2``."""
    g, d = cfg.genus, cfg.degree
    X = projective_space(3, "l")
    HX = projective_space(3, "l")
    B, HB = _curve_chow(cfg), _curve_coh()
    l, lB, KB, pt = X.generator("l"), B.generator("lB"), B.generator("KB"), HB.generator("pt")
    cycle_B = make_hom(B, HB, {"lB": d * pt, "KB": (2 * g - 2) * pt}, "cl")
    cycle_X = make_hom(X, HX, {"l": HX.generator("l")}, "cl")
    j_pull = make_hom(X, B, {"l": lB}, "j^*")
    h_pull = make_hom(HX, HB, {"l": d * pt}, "j^*")

    chow_push_images = {(0, 0): d * l ** 2, (1, B.index_of("lB")[1]): d * l ** 3,
                        (1, B.index_of("KB")[1]): (2 * g - 2) * l ** 3}
    j_push = PushforwardMap(B, X, 2, lambda dd, i: chow_push_images[(dd, i)].vec, "j_*",
                            companion=j_pull)
    hl = HX.generator("l")
    coh_push_images = {(0, 0): d * hl ** 2, (1, 0): hl ** 3}
    h_push = PushforwardMap(HB, HX, 2, lambda dd, i: coh_push_images[(dd, i)].vec, "j_*",
                            companion=h_pull)
    c1 = 4 * lB + KB
    Y = blowup(BlowupData(X, B, 2, j_pull, j_push, [c1], name="CH(P3^)"))
    HY = blowup(BlowupData(HX, HB, 2, h_pull, h_push, [cycle_B.apply(c1)], name="H(P3^)"))
    cycle = blowup_map(Y, HY, cycle_X, cycle_B, "cl")
    E = Y.exceptional
    eta = E.eta_pull
    e = Y.exceptional_class
    cls = {"[E]": e, "eps^*l": Y.eps_pull.apply(l), "eps^*[B]": Y.eps_pull.apply(d * l ** 2),
           "c1(N)": c1,
           "i_*eta^*lB": Y.i_push_element(eta.apply(lB)), "i_*eta^*KB": Y.i_push_element(eta.apply(KB)),
           "witness": Y.i_push_element(eta.apply(d * KB - (2 * g - 2) * lB))}
    return VarietyModel(
        name=f"P3 blown up along a curve (g={g}, d={d})", dim=3, chow=Y, coh=HY, cycle=cycle,
        point_class=Y.eps_pull.apply(l ** 3), q=None, classes=cls,
        axioms=["l_B and K_B are independent in CH^1(B)",
                "i_* eta^* is injective on degree-zero classes of CH^1(B)"],
        relations=["c_1(N) = 4 l_B + K_B", "[B] = d l^2"],
        parts={"config": cfg})
