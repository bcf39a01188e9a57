"""Self-products of a K3 surface and its Hilbert square.

Chow side.  ``CH(S x S)`` is modeled as the Kunneth product plus one extra
degree-2 class ``[Delta]``: the Kunneth expression alone would give
``deg [Delta]^2 = 2 + rho`` instead of 24, so the diagonal is kept as an
independent direction with ``[Delta] (a x b) = Delta_*(ab)`` and
``[Delta]^2 = Delta_* c_2(T_S)``.

Cohomology side.  ``H(S x S)`` is the honest Kunneth product and
``[Delta] = sum e_i x e^i`` over a basis and its Poincare dual basis.

The blow-up along the diagonal, its swap involution, the invariant
algebra (the Hilbert square) and the incidence embedding are assembled
from these.
"""
from __future__ import annotations

from fractions import Fraction

from .. import linalg
from ..bb import QuadraticSpace
from ..gca import AlgebraError, Element, GradedAlgebra, integrate
from ..geom import BlowupData, ProductAlgebra, blowup, blowup_map, tensor_map
from ..linalg import Vector, axpy
from ..maps import AlgebraHom, LinearMap, PushforwardMap, compose, identity, transfer_pair
from .base import ConfigError, FormalSpace, K3Config, VarietyModel
from .surfaces import k3_model


class DiagonalSquare(GradedAlgebra):
    """Kunneth product ``CH(S) (x) CH(S)`` with an extra class ``[Delta]``."""

    def __init__(self, surface: GradedAlgebra, c2: Element, point: Element, name="CH(S^2)"):
        P = ProductAlgebra(surface, surface)
        self.factor = surface
        self.kunneth = P
        self.c2 = c2
        self.point = point
        labels = [list(P.labels(d)) for d in range(P.top + 1)]
        labels[2].append("[Delta]")
        self.delta_index = P.dim(2)
        super().__init__(name, P.top, labels, self._product, dict(P.integral),
                         provenance=("diagonal_square", surface))

    def _push_vec(self, x: Element) -> Vector:
        """``Delta_* x``: unit to [Delta], ``a -> a x o + o x a`` in degree 1,
        ``o -> o x o`` in degree 2."""
        P, o = self.kunneth, self.point
        if x.degree == 0:
            c = x.vec.get(0, 0)
            return {self.delta_index: c} if c else {}
        if x.degree == 1:
            return (P.box(x, o) + P.box(o, x)).vec
        if x.degree == 2:
            c = x.vec.get(0, 0) / o.vec[0] if self.factor.dim(2) == 1 else None
            if c is None:
                raise AlgebraError("pushforward along the diagonal needs a one-dimensional CH^2")
            return (c * P.box(o, o)).vec
        return {}

    def _product(self, d, i, e, j):
        P = self.kunneth
        dl = d == 2 and i == self.delta_index
        el = e == 2 and j == self.delta_index
        if dl and el:
            return self._push_vec(self.c2)
        if dl or el:
            if dl:
                e, j = e, j
            else:
                e, j = d, i
            if e == 0:
                return {self.delta_index: Fraction(1)}
            r, a, s, b = P.component(e, j)
            prod = self.factor.basis(r, a) * self.factor.basis(s, b)
            return self._push_vec(prod)
        return P.basis_product(d, i, e, j)

    @property
    def delta(self) -> Element:
        return self.basis(2, self.delta_index)

    def box(self, a: Element, b: Element) -> Element:
        x = self.kunneth.box(a, b)
        return Element(self, x.degree, x.vec)

    def from_kunneth(self, x: Element) -> Element:
        return Element(self, x.degree, dict(x.vec))

    def kunneth_part(self, x: Element) -> Element:
        if x.degree == 2:
            return Element(self.kunneth, 2, {k: c for k, c in x.vec.items() if k != self.delta_index})
        return Element(self.kunneth, x.degree, dict(x.vec))

    def pr_pull(self, which: int) -> AlgebraHom:
        base = self.kunneth.pr1_pull if which == 1 else self.kunneth.pr2_pull
        return AlgebraHom(self.factor, self, base.column, f"pr_{which}^*")

    def pr_push(self, which: int) -> PushforwardMap:
        base = self.kunneth.pr1_push if which == 1 else self.kunneth.pr2_push

        def col(d, k):
            if d == 2 and k == self.delta_index:
                return {0: Fraction(1)}
            return base.column(d, k)
        return PushforwardMap(self, self.factor, -self.factor.top, col, f"pr_{which}_*",
                              companion=self.pr_pull(which))

    @property
    def diag_push(self) -> PushforwardMap:
        S = self.factor
        return PushforwardMap(S, self, 2, lambda d, i: self._push_vec(S.basis(d, i)), "Delta_*",
                              companion=self.diag_pull)

    @property
    def diag_pull(self) -> AlgebraHom:
        S, P = self.factor, self.kunneth

        def col(d, k):
            if d == 2 and k == self.delta_index:
                return self.c2.vec
            r, a, s, b = P.component(d, k)
            return (S.basis(r, a) * S.basis(s, b)).vec
        return AlgebraHom(self, S, col, "Delta^*")

    @property
    def swap(self) -> AlgebraHom:
        P = self.kunneth

        def col(d, k):
            if d == 2 and k == self.delta_index:
                return {k: Fraction(1)}
            r, a, s, b = P.component(d, k)
            return {P.index(s, b, r, a): Fraction(1)}
        return AlgebraHom(self, self, col, "swap")


def diagonal_class(H: GradedAlgebra, P: ProductAlgebra) -> Element:
    """``sum e_i x e^i`` with ``integral(e_i e^j) = delta_ij``."""
    if P.first is not H or P.second is not H:
        raise AlgebraError("diagonal class needs the square of the algebra")
    n = H.top
    out = P.zero(n)
    for d in range(n + 1):
        e = n - d
        M = [[integrate(H.basis(d, i) * H.basis(e, j)) for j in range(H.dim(e))] for i in range(H.dim(d))]
        inv = linalg.matrix_inverse(M)
        for i in range(H.dim(d)):
            dual = Element(H, e, linalg.vec({j: inv[j][i] for j in range(H.dim(e))}))
            out = out + P.box(H.basis(d, i), dual)
    return out


def _kunneth_swap(P: ProductAlgebra) -> AlgebraHom:
    return AlgebraHom(P, P, lambda d, k: {P.index(*(lambda r, a, s, b: (s, b, r, a))(*P.component(d, k))): 1},
                      "swap")


def _coh_diag_maps(H: GradedAlgebra, P: ProductAlgebra, delta: Element):
    pull = AlgebraHom(P, H, lambda d, k: (lambda r, a, s, b: (H.basis(r, a) * H.basis(s, b)).vec)(
        *P.component(d, k)), "Delta^*")
    push = PushforwardMap(H, P, H.top, lambda d, i: (delta * P.pr1_pull.apply(H.basis(d, i))).vec,
                          "Delta_*", companion=pull)
    return pull, push


def surface_square(cfg: K3Config, surface: VarietyModel | None = None) -> VarietyModel:
    """``S x S`` with the diagonal in both models."""
    cfg.require_b2()
    S = surface or k3_model(cfg)
    o = S.classes["o"]
    D = DiagonalSquare(S.chow, S.classes["c2(T_S)"], o)
    HP = ProductAlgebra(S.coh, S.coh, "H(S^2)")
    delta_h = diagonal_class(S.coh, HP)
    kc = tensor_map(S.cycle, S.cycle, D.kunneth, HP)

    def cyc(d, k):
        if d == 2 and k == D.delta_index:
            return delta_h.vec
        return kc.column(d, k)

    cycle = AlgebraHom(D, HP, cyc, "cl")
    h_pull, h_push = _coh_diag_maps(S.coh, HP, delta_h)
    return VarietyModel(
        name=f"S^2 (rho={cfg.rho})", dim=4, chow=D, coh=HP, cycle=cycle, point_class=D.box(o, o),
        classes={"[Delta]": D.delta, "[Delta]_coh": delta_h},
        maps={"Delta^*": D.diag_pull, "Delta_*": D.diag_push, "swap": D.swap,
              "Delta^*_coh": h_pull, "Delta_*_coh": h_push, "swap_coh": _kunneth_swap(HP),
              "pr1^*": D.pr_pull(1), "pr2^*": D.pr_pull(2), "pr1_*": D.pr_push(1), "pr2_*": D.pr_push(2)},
        axioms=["[Delta] is independent of the Kunneth classes in CH^2(S^2)"],
        relations=["Delta_* a = a x o + o x a for a in CH^1(S)", "Delta_*[o] = o x o",
                   "[Delta]^2 = Delta_* c_2(T_S)"],
        parts={"surface": S, "config": cfg})


def blown_up_square(cfg: K3Config, square: VarietyModel | None = None) -> VarietyModel:
    """Blow-up of ``S x S`` along the diagonal, normal bundle ``T_S``."""
    sq = square or surface_square(cfg)
    S = sq.parts["surface"]
    D, HP = sq.chow, sq.coh
    zero_chow, zero_coh = S.chow.zero(1), S.coh.zero(1)
    Y = blowup(BlowupData(D, S.chow, 2, sq.maps["Delta^*"], sq.maps["Delta_*"], [zero_chow],
                          name="CH(S{{2}})"))
    HY = blowup(BlowupData(HP, S.coh, 2, sq.maps["Delta^*_coh"], sq.maps["Delta_*_coh"], [zero_coh],
                           name="H(S{{2}})"))
    cycle = blowup_map(Y, HY, sq.cycle, S.cycle, "cl")
    sigma = blowup_map(Y, Y, sq.maps["swap"], identity(S.chow), "sigma")
    sigma_h = blowup_map(HY, HY, sq.maps["swap_coh"], identity(S.coh), "sigma")
    p_pull = compose(Y.eps_pull, sq.maps["pr1^*"], "p^*")
    q_pull = compose(Y.eps_pull, sq.maps["pr2^*"], "q^*")
    hp_pull = compose(HY.eps_pull, HP.pr1_pull, "p^*")
    hq_pull = compose(HY.eps_pull, HP.pr2_pull, "q^*")
    e = Y.exceptional_class
    o = S.classes["o"]
    eta = Y.exceptional.eta_pull
    cls = {"[E]": e, "eps^*[Delta]": Y.eps_pull.apply(D.delta), "p^*o": p_pull.apply(o),
           "q^*o": q_pull.apply(o), "i_*eta^*o": Y.i_push_element(eta.apply(o)),
           "[E]_coh": HY.exceptional_class}
    return VarietyModel(
        name=f"S{{{{2}}}} (rho={cfg.rho})", dim=4, chow=Y, coh=HY, cycle=cycle,
        point_class=Y.eps_pull.apply(sq.point_class), classes=cls,
        maps={"sigma": sigma, "sigma_coh": sigma_h, "p^*": p_pull, "q^*": q_pull,
              "p^*_coh": hp_pull, "q^*_coh": hq_pull},
        axioms=list(sq.axioms), relations=list(sq.relations) + ["c(N_Delta) = c(T_S) = 1 + 24[o]"],
        parts={"square": sq, "surface": S, "config": cfg})


def _invariant_cycle(Q, HQ, pull, cycle):
    return AlgebraHom(Q, HQ, lambda d, k: HQ.coordinates(cycle.apply(Q.lift(Q.basis(d, k)))).vec, "cl")


def hilbert_square(cfg: K3Config, curly: VarietyModel | None = None) -> VarietyModel:
    """Invariants of the lifted swap, with the halved integral."""
    Y = curly or blown_up_square(cfg)
    S = Y.parts["surface"]
    Q, pull, push = transfer_pair(Y.chow, Y.maps["sigma"], "CH(S[2])")
    HQ, hpull, hpush = transfer_pair(Y.coh, Y.maps["sigma_coh"], "H(S[2])")
    cycle = _invariant_cycle(Q, HQ, pull, Y.cycle)
    iota = compose(push, Y.maps["p^*"], "iota")
    iota_h = compose(hpush, Y.maps["p^*_coh"], "iota")
    e = Y.classes["[E]"]
    ebar = push.apply(e)
    eta = Y.chow.exceptional.eta_pull
    i_prime = LinearMap(S.chow, Q, 1, lambda d, i: push.apply(
        Y.chow.i_push_element(eta.apply(S.chow.basis(d, i)))).vec, "i'_* eta^*")
    heta = Y.coh.exceptional.eta_pull
    i_prime_h = LinearMap(S.coh, HQ, 1, lambda d, i: hpush.apply(
        Y.coh.i_push_element(heta.apply(S.coh.basis(d, i)))).vec, "i'_* eta^*")
    # Beauville-Bogomolov form: q(iota a, iota b) = <a, b>, q(Ebar) = -8
    rho = cfg.rho
    natural = [iota.apply(S.chow.basis(1, i)) for i in range(rho)] + [ebar]
    M = [list(x.coords) for x in natural]
    G = [[Fraction(0)] * (rho + 1) for _ in range(rho + 1)]
    for i in range(rho):
        for j in range(rho):
            G[i][j] = cfg.picard[i][j]
    G[rho][rho] = Fraction(-8)
    Minv = linalg.matrix_inverse(M)
    gram = [[sum(Minv[i][a] * G[a][b] * Minv[j][b] for a in range(rho + 1) for b in range(rho + 1))
             for j in range(rho + 1)] for i in range(rho + 1)]
    o = S.classes["o"]
    cls = {"[Ebar]": ebar, "iota(o)": iota.apply(o), "[Ebar]_coh": hpush.apply(Y.classes["[E]_coh"]),
           "iota(o)_coh": iota_h.apply(S.coh.generator("pt")),
           "pi_*eps^*[Delta]": push.apply(Y.classes["eps^*[Delta]"]),
           "i'_*eta^*o": i_prime.apply(o)}
    return VarietyModel(
        name=f"S[2] (rho={cfg.rho})", dim=4, chow=Q, coh=HQ, cycle=cycle,
        point_class=iota.apply(o) * iota.apply(o),
        q=QuadraticSpace(gram, [f"b{i + 1}" for i in range(rho + 1)]), classes=cls,
        maps={"pi^*": pull, "pi_*": push, "pi^*_coh": hpull, "pi_*_coh": hpush, "iota": iota,
              "iota_coh": iota_h, "i'_*eta^*": i_prime, "i'_*eta^*_coh": i_prime_h},
        axioms=list(Y.axioms) + ["CH(S[2]) is identified with the sigma-invariants of CH(S{{2}})"],
        relations=list(Y.relations) + ["q(iota a, iota b) = <a, b>, q(Ebar) = -8, q(iota a, Ebar) = 0"],
        parts={"curly": Y, "surface": S, "config": cfg, "bb_natural_basis": natural})


# ---------------------------------------------------------------------------
# S x S[2], the incidence embedding j = (p, pi) and its factorization

class IncidenceData:
    """Pushforwards along ``j' = (p, 1)``, ``j'' = (q, 1)`` and ``j = (1, pi) j'``.

    On the Chow side ``j'_*`` is computed by base change,
    ``j'_*(p^* x * y) = (1, p)^* Delta_* x * pr_2^* y`` for ``deg x >= 1``;
    classes without such a factorization become symbols of a
    :class:`FormalSpace`.  On the cohomology side ``j'_* y = Gamma_p * (1 x y)``
    with ``Gamma_p = (1 x p^*)[Delta]`` is computed directly and gives every
    symbol its cohomology image.
    """

    def __init__(self, hilb: VarietyModel):
        Y = hilb.parts["curly"]
        S = hilb.parts["surface"]
        self.hilb, self.curly, self.surface = hilb, Y, S
        self.sq = Y.parts["square"]
        D = self.sq.chow
        self.D = D
        self.SY = ProductAlgebra(S.chow, Y.chow, "CH(S x S{{2}})")
        self.HSY = ProductAlgebra(S.coh, Y.coh, "H(S x S{{2}})")
        self.X = ProductAlgebra(S.chow, hilb.chow, "CH(S x S[2])")
        self.HX = ProductAlgebra(S.coh, hilb.coh, "H(S x S[2])")
        self.cycle_SY = tensor_map(S.cycle, Y.cycle, self.SY, self.HSY, "cl")
        self.cycle_X = tensor_map(S.cycle, hilb.cycle, self.X, self.HX, "cl")
        self.pi_S = tensor_map(identity(S.chow), hilb.maps["pi_*"], self.SY, self.X, "pi_S*")
        self.pi_S_h = tensor_map(identity(S.coh), hilb.maps["pi_*_coh"], self.HSY, self.HX, "pi_S*")
        self.pi_S_pull_h = tensor_map(identity(S.coh), hilb.maps["pi^*_coh"], self.HX, self.HSY, "pi_S^*")
        delta_h = self.sq.classes["[Delta]_coh"]
        HP = self.sq.coh
        self.gamma_p = tensor_map(identity(S.coh), Y.maps["p^*_coh"], HP, self.HSY).apply(delta_h)
        self.gamma_q = tensor_map(identity(S.coh), Y.maps["q^*_coh"], HP, self.HSY).apply(delta_h)
        self._spaces = {}

    # base change ------------------------------------------------------------
    def _one_p_kunneth(self, x: Element, which: str) -> Element:
        """``(1, p)^* x`` (or ``(1, q)^*``) for a Kunneth class x of S x S."""
        Y = self.curly
        f = Y.maps["p^*"] if which == "p" else Y.maps["q^*"]
        out = self.SY.zero(x.degree)
        P = self.D.kunneth
        for k, c in x.vec.items():
            r, a, s, b = P.component(x.degree, k)
            out = out + c * self.SY.box(self.surface.chow.basis(r, a), f.apply(self.surface.chow.basis(s, b)))
        return out

    def _base_change(self, d: int, n: int, which: str) -> Element | None:
        """``j'_*`` (which='p') or ``j''_*`` (which='q') of a basis class of
        CH(S{{2}}) when base change applies, else None."""
        Y, D, S = self.curly.chow, self.D, self.surface.chow
        kind, deg, idx = Y.component(d, n)
        other = self.curly.maps["q^*"] if which == "p" else self.curly.maps["p^*"]
        if kind == "eps":
            if deg == 2 and idx == D.delta_index:
                return None
            r, a, s, b = D.kunneth.component(deg, idx)
            x, y = (S.basis(r, a), S.basis(s, b)) if which == "p" else (S.basis(s, b), S.basis(r, a))
            if x.degree == 0:
                return None
            pushed = D.kunneth_part(D.diag_push.apply(x))
            return self._one_p_kunneth(pushed, which) * self.SY.pr2_pull.apply(other.apply(y))
        # i_*(eta^* b) = p^* b * [E] = q^* b * [E]
        E = Y.exceptional
        k, db, i = E.component(deg - 1, idx)
        if db == 0:
            return None
        pushed = D.kunneth_part(D.diag_push.apply(S.basis(db, i)))
        return self._one_p_kunneth(pushed, which) * self.SY.pr2_pull.apply(Y.exceptional_class)

    def irreducible(self, d: int, which: str) -> list:
        return [n for n in range(self.curly.chow.dim(d)) if self._base_change(d, n, which) is None]

    def sy_space(self, degree: int) -> FormalSpace:
        key = ("SY", degree)
        if key not in self._spaces:
            Y = self.curly.chow
            syms = [f"j'_*({Y.labels(degree - 2)[n]})" for n in self.irreducible(degree - 2, "p")]
            syms += [f"j''_*({Y.labels(degree - 2)[n]})" for n in self.irreducible(degree - 2, "q")]
            self._spaces[key] = FormalSpace(self.SY, degree, syms)
        return self._spaces[key]

    def x_space(self, degree: int) -> FormalSpace:
        key = ("X", degree)
        if key not in self._spaces:
            Y = self.curly.chow
            syms = [f"j_*({Y.labels(degree - 2)[n]})" for n in self.irreducible(degree - 2, "p")]
            self._spaces[key] = FormalSpace(self.X, degree, syms)
        return self._spaces[key]

    def jprime_push(self, y: Element, which: str = "p") -> dict:
        """``j'_* y`` (or ``j''_* y``) as a vector of the formal space."""
        F = self.sy_space(y.degree + 2)
        out: dict = {}
        prefix = "j'_*" if which == "p" else "j''_*"
        for n, c in y.vec.items():
            bc = self._base_change(y.degree, n, which)
            if bc is None:
                axpy(out, c, F.symbol(f"{prefix}({y.algebra.labels(y.degree)[n]})"))
            else:
                axpy(out, c, F.from_base(bc))
        return out

    def pi_S_push(self, v: dict, degree: int) -> dict:
        """``(1, pi)_*`` from the formal space of S x S{{2}} to that of S x S[2]."""
        F, G = self.sy_space(degree), self.x_space(degree)
        Y = self.curly.chow
        sigma = self.curly.maps["sigma"]
        out = G.from_base(self.pi_S.apply(F.base_part(v)))
        labels = Y.labels(degree - 2)
        index = {l: n for n, l in enumerate(labels)}
        for sym, c in F.symbol_part(v).items():
            if sym.startswith("j'_*("):
                y = Y.basis(degree - 2, index[sym[5:-1]])
            else:
                y = sigma.apply(Y.basis(degree - 2, index[sym[6:-1]]))
            axpy(out, c, self.j_push(y))
        return out

    def j_push(self, y: Element) -> dict:
        """``j_* y = (1, pi)_* j'_* y`` in the formal space of S x S[2]."""
        G = self.x_space(y.degree + 2)
        out: dict = {}
        for n, c in y.vec.items():
            bc = self._base_change(y.degree, n, "p")
            if bc is None:
                axpy(out, c, G.symbol(f"j_*({y.algebra.labels(y.degree)[n]})"))
            else:
                axpy(out, c, G.from_base(self.pi_S.apply(bc)))
        return out

    # cohomology ---------------------------------------------------------------
    def jprime_push_coh(self, y: Element, which: str = "p") -> Element:
        g = self.gamma_p if which == "p" else self.gamma_q
        return g * self.HSY.pr2_pull.apply(y)

    def j_push_coh(self, y: Element) -> Element:
        return self.pi_S_h.apply(self.jprime_push_coh(y))

    def sy_cycle(self, v: dict, degree: int) -> Element:
        F = self.sy_space(degree)
        Y = self.curly.chow
        index = {l: n for n, l in enumerate(Y.labels(degree - 2))}
        images = {}
        for sym in F.symbols:
            which = "p" if sym.startswith("j'_*(") else "q"
            lab = sym[5:-1] if which == "p" else sym[6:-1]
            images[sym] = self.jprime_push_coh(self.curly.cycle.apply(Y.basis(degree - 2, index[lab])), which)
        return F.image(v, self.cycle_SY, images)

    def x_cycle(self, v: dict, degree: int) -> Element:
        G = self.x_space(degree)
        Y = self.curly.chow
        index = {l: n for n, l in enumerate(Y.labels(degree - 2))}
        images = {sym: self.j_push_coh(self.curly.cycle.apply(Y.basis(degree - 2, index[sym[4:-1]])))
                  for sym in G.symbols}
        return G.image(v, self.cycle_X, images)


def surface_times_hilbert_square(cfg: K3Config, hilb: VarietyModel | None = None) -> VarietyModel:
    """``S x S[2]`` with the incidence pushforwards attached."""
    H = hilb or hilbert_square(cfg)
    S = H.parts["surface"]
    inc = IncidenceData(H)
    o = S.classes["o"]
    return VarietyModel(
        name=f"S x S[2] (rho={cfg.rho})", dim=6, chow=inc.X, coh=inc.HX, cycle=inc.cycle_X,
        point_class=inc.X.box(o, H.point_class),
        classes={"o x iota(o)": inc.X.box(o, H.classes["iota(o)"])},
        maps={}, axioms=list(H.axioms) + [
            "pushforwards along the incidence embedding without a base-change expression are "
            "independent symbols"],
        relations=list(H.relations) + ["j'_*(p^* x * y) = (1, p)^* Delta_* x * pr_2^* y for deg x >= 1"],
        parts={"hilb": H, "surface": S, "incidence": inc, "config": cfg})


def s_power(cfg: K3Config, n: int):
    """``S^n`` for n in {2, 3}; for n = 3 see :func:`surface_cube`."""
    if n == 2:
        return surface_square(cfg)
    if n == 3:
        return surface_cube(cfg)
    raise ConfigError("only n = 2 and n = 3 are modeled")


class CubeData:
    """Degree-4 piece of ``CH(S^3)`` as ``CH(S) (x) CH(S^2)`` plus the symbols
    ``[delta]``, ``p12^*[Delta] p3^*[o]``, ``p13^*[Delta] p2^*[o]``, with the
    small-diagonal relation as an axiom; and the honest cohomology ring."""

    SYMBOLS = ("[delta]", "p12^*[Delta]*p3^*[o]", "p13^*[Delta]*p2^*[o]")

    def __init__(self, cfg: K3Config, square: VarietyModel | None = None):
        sq = square or surface_square(cfg)
        S = sq.parts["surface"]
        self.sq, self.surface = sq, S
        D, HP = sq.chow, sq.coh
        self.chow = ProductAlgebra(S.chow, D, "CH(S x S^2)")
        self.coh = ProductAlgebra(S.coh, HP, "H(S^3)")
        self.space = FormalSpace(self.chow, 4, self.SYMBOLS)
        H = self.coh
        self.p1 = H.pr1_pull
        self.p23 = H.pr2_pull
        self.p2 = compose(H.pr2_pull, HP.pr1_pull, "p2^*")
        self.p3 = compose(H.pr2_pull, HP.pr2_pull, "p3^*")
        self.p12 = tensor_map(identity(S.coh), HP.pr1_pull, HP, H, "p12^*")
        self.p13 = tensor_map(identity(S.coh), HP.pr2_pull, HP, H, "p13^*")
        delta = sq.classes["[Delta]_coh"]
        self.delta_small = self.p12.apply(delta) * self.p23.apply(delta)
        pt = S.coh.generator("pt")
        self.symbol_images = {
            "[delta]": self.delta_small,
            "p12^*[Delta]*p3^*[o]": self.p12.apply(delta) * self.p3.apply(pt),
            "p13^*[Delta]*p2^*[o]": self.p13.apply(delta) * self.p2.apply(pt),
        }
        self.cycle_base = tensor_map(S.cycle, sq.cycle, self.chow, self.coh, "cl")

    def relation(self) -> dict:
        """``[delta] - sum p_ij^*[Delta] p_k^*[o] + sum p_i^*[o] p_j^*[o]``."""
        F, A = self.space, self.chow
        S, D = self.surface.chow, self.sq.chow
        o, one = self.surface.classes["o"], S.one()
        v = F.symbol("[delta]")
        axpy(v, -1, F.symbol("p12^*[Delta]*p3^*[o]"))
        axpy(v, -1, F.symbol("p13^*[Delta]*p2^*[o]"))
        axpy(v, -1, F.from_base(A.box(o, D.delta)))
        for x in (A.box(o, D.box(o, one)), A.box(o, D.box(one, o)), A.box(one, D.box(o, o))):
            axpy(v, 1, F.from_base(x))
        return v

    def cycle(self, v: dict) -> Element:
        return self.space.image(v, self.cycle_base, self.symbol_images)

    def coh_relation(self) -> Element:
        pt = self.surface.coh.generator("pt")
        delta = self.sq.classes["[Delta]_coh"]
        terms = self.delta_small
        terms = terms - self.p12.apply(delta) * self.p3.apply(pt)
        terms = terms - self.p13.apply(delta) * self.p2.apply(pt)
        terms = terms - self.p23.apply(delta) * self.p1.apply(pt)
        terms = terms + self.p1.apply(pt) * self.p2.apply(pt) + self.p1.apply(pt) * self.p3.apply(pt) \
            + self.p2.apply(pt) * self.p3.apply(pt)
        return terms


def surface_cube(cfg: K3Config) -> VarietyModel:
    cube = CubeData(cfg)
    S = cube.surface
    o = S.classes["o"]
    return VarietyModel(
        name=f"S^3 (rho={cfg.rho})", dim=6, chow=cube.chow, coh=cube.coh, cycle=cube.cycle_base,
        point_class=cube.chow.box(o, cube.sq.point_class), classes={},
        axioms=["[delta] is defined by the small-diagonal relation in CH^4(S^3)"],
        relations=["[delta] - sum p_ij^*[Delta] p_k^*[o] + sum p_i^*[o] p_j^*[o] = 0"],
        parts={"cube": cube, "config": cfg})


s_curly2 = blown_up_square
s_hilb2 = hilbert_square
s_times_hilb2 = surface_times_hilbert_square
