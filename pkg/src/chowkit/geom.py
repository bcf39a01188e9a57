"""Geometric constructors: Kunneth products, projective bundles, blow-ups.

Conventions.  For a projective bundle built from a bundle F of rank r the
tautological class h satisfies the Grothendieck relation
``sum_p (-1)^p h^(r-p) c_p(F) = 0``.  The exceptional divisor of a blow-up
along B with normal bundle N is E = P(N) presented through F = N^dual, so
that ``i^*[E] = -h`` and the excess class is
``gamma = h^(c-1) + h^(c-2) c_1(N) + ... + c_(c-1)(N)``, which gives the key
formula ``i_*(gamma * eta^* b) = eps^* j_* b``.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Sequence

from . import linalg
from .gca import (AlgebraError, Element, GradedAlgebra, Outcome, Presentation, build_algebra)
from .linalg import Vector, axpy
from .maps import AlgebraHom, LinearMap, MapError, PushforwardMap, check_projection_formula, make_hom


# ---------------------------------------------------------------------------
# products

class ProductAlgebra(GradedAlgebra):
    """Kunneth product ``A (x) B``; basis in degree p is all pairs
    ``(a_(r,i), b_(p-r,j))`` ordered by r, then i, then j."""

    def __init__(self, first: GradedAlgebra, second: GradedAlgebra, name: str | None = None):
        self.first = first
        self.second = second
        top = first.top + second.top
        self._components = []
        self._index = {}
        labels = []
        for p in range(top + 1):
            comps, labs = [], []
            for r in range(max(0, p - second.top), min(first.top, p) + 1):
                s = p - r
                for i in range(first.dim(r)):
                    for j in range(second.dim(s)):
                        self._index[(r, i, s, j)] = len(comps)
                        comps.append((r, i, s, j))
                        labs.append(f"{first.labels(r)[i]}⊠{second.labels(s)[j]}")
            self._components.append(comps)
            labels.append(labs)
        integral = {}
        for k, (r, i, s, j) in enumerate(self._components[top]):
            v = first.integral.get(i, 0) * second.integral.get(j, 0)
            if v:
                integral[k] = v
        super().__init__(name or f"{first.name}×{second.name}", top, labels, self._product, integral,
                         poincare=first.poincare and second.poincare,
                         provenance=("product", first, second))

    def component(self, d: int, k: int) -> tuple:
        return self._components[d][k]

    def index(self, r, i, s, j) -> int:
        return self._index[(r, i, s, j)]

    def _product(self, d, k, e, l):
        r, i, s, j = self._components[d][k]
        r2, i2, s2, j2 = self._components[e][l]
        if r + r2 > self.first.top or s + s2 > self.second.top:
            return {}
        u = self.first.basis_product(r, i, r2, i2)
        v = self.second.basis_product(s, j, s2, j2)
        out = {}
        for a, x in u.items():
            for b, y in v.items():
                out[self._index[(r + r2, a, s + s2, b)]] = x * y
        return out

    def box(self, a: Element, b: Element) -> Element:
        """Exterior product ``pr_1^* a * pr_2^* b``."""
        if a.algebra is not self.first or b.algebra is not self.second:
            raise AlgebraError("box: factor mismatch")
        out = {}
        for i, x in a.vec.items():
            for j, y in b.vec.items():
                out[self._index[(a.degree, i, b.degree, j)]] = x * y
        return Element(self, a.degree + b.degree, linalg.vec(out))

    def split(self, x: Element) -> dict:
        """Decompose ``x`` into ``{(r, s): {(i, j): coeff}}``."""
        out: dict = {}
        for k, c in x.vec.items():
            r, i, s, j = self._components[x.degree][k]
            out.setdefault((r, s), {})[(i, j)] = c
        return out

    @property
    def pr1_pull(self) -> AlgebraHom:
        return AlgebraHom(self.first, self, lambda d, i: {self._index[(d, i, 0, 0)]: Fraction(1)}, "pr_1^*")

    @property
    def pr2_pull(self) -> AlgebraHom:
        return AlgebraHom(self.second, self, lambda d, j: {self._index[(0, 0, d, j)]: Fraction(1)}, "pr_2^*")

    @property
    def pr1_push(self) -> PushforwardMap:
        def col(d, k):
            r, i, s, j = self._components[d][k]
            if s != self.second.top:
                return {}
            c = self.second.integral.get(j, 0)
            return {i: c} if c else {}
        return PushforwardMap(self, self.first, -self.second.top, col, "pr_1_*", companion=self.pr1_pull)

    @property
    def pr2_push(self) -> PushforwardMap:
        def col(d, k):
            r, i, s, j = self._components[d][k]
            if r != self.first.top:
                return {}
            c = self.first.integral.get(i, 0)
            return {j: c} if c else {}
        return PushforwardMap(self, self.second, -self.first.top, col, "pr_2_*", companion=self.pr2_pull)


def product_algebra(A: GradedAlgebra, B: GradedAlgebra, name: str | None = None) -> ProductAlgebra:
    return ProductAlgebra(A, B, name)


def tensor_map(f: LinearMap, g: LinearMap, source: ProductAlgebra, target: ProductAlgebra,
               name: str = "") -> LinearMap:
    """``f (x) g`` between Kunneth products (an AlgebraHom when both are)."""
    if source.first is not f.source or source.second is not g.source:
        raise AlgebraError("tensor_map: source factors do not match")
    if target.first is not f.target or target.second is not g.target:
        raise AlgebraError("tensor_map: target factors do not match")

    def col(d, k):
        r, i, s, j = source.component(d, k)
        u, v = f.column(r, i), g.column(s, j)
        out = {}
        for a, x in u.items():
            for b, y in v.items():
                out[target.index(r + f.shift, a, s + g.shift, b)] = x * y
        return out

    if isinstance(f, AlgebraHom) and isinstance(g, AlgebraHom):
        return AlgebraHom(source, target, col, name)
    return LinearMap(source, target, f.shift + g.shift, col, name)


def dch_dimensions(A: GradedAlgebra) -> tuple:
    from .gca import dch
    return tuple(dch(A, p).dim for p in range(A.top + 1))


def product_dch_check(A: GradedAlgebra, B: GradedAlgebra, P: ProductAlgebra | None = None) -> Outcome:
    """``dim DCH^p(A x B) = sum_(r+s=p) dim DCH^r(A) dim DCH^s(B)`` for all p."""
    P = P or ProductAlgebra(A, B)
    da, db, dp = dch_dimensions(A), dch_dimensions(B), dch_dimensions(P)
    expected = tuple(sum(da[r] * db[p - r] for r in range(len(da)) if 0 <= p - r < len(db))
                     for p in range(P.top + 1))
    ok = expected == dp
    return Outcome(ok, "dimension identity holds" if ok else "dimension identity fails",
                   {"dch_first": da, "dch_second": db, "dch_product": dp, "expected": expected})


# ---------------------------------------------------------------------------
# projective bundles

class BundleAlgebra(GradedAlgebra):
    """CH of P(F) over ``base``: free base-module on ``1, h, ..., h^(rank-1)``.

    ``chern[p]`` is c_p(F) (``chern[0]`` is the unit).  Basis labels are
    ``h^k*b``; basis components are ``(k, base degree, base index)``.
    """

    def __init__(self, base: GradedAlgebra, chern: Sequence[Element], rank: int, name: str | None = None):
        if rank < 1:
            raise AlgebraError("rank must be >= 1")
        chern = list(chern)
        if not chern or chern[0] != base.one():
            chern = [base.one()] + chern
        if len(chern) > rank + 1:
            raise AlgebraError(f"a rank {rank} bundle has at most {rank} Chern classes")
        for p, c in enumerate(chern):
            if c.algebra is not base:
                raise AlgebraError("Chern classes must live on the base")
            if c.degree != p and not c.is_zero():
                raise AlgebraError(f"Chern class c_{p} has degree {c.degree}")
        while len(chern) < rank + 1:
            chern.append(base.zero(len(chern)))
        self.base = base
        self.rank = rank
        self.chern = [c if c.degree == p else base.zero(p) for p, c in enumerate(chern)]
        top = base.top + rank - 1
        self._components = []
        self._index = {}
        labels = []
        for D in range(top + 1):
            comps, labs = [], []
            for k in range(rank):
                db = D - k
                if not 0 <= db <= base.top:
                    continue
                for i in range(base.dim(db)):
                    self._index[(k, db, i)] = len(comps)
                    comps.append((k, db, i))
                    bl = base.labels(db)[i]
                    hl = "" if k == 0 else ("h" if k == 1 else f"h^{k}")
                    labs.append(bl if not hl else (hl if bl == "1" else f"{hl}*{bl}"))
            self._components.append(comps)
            labels.append(labs)
        self._powers: list = []  # _powers[N][k]: base Element of degree N - k
        integral = {}
        for n, (k, db, i) in enumerate(self._components[top]):
            if k == rank - 1:
                v = base.integral.get(i, 0)
                if v:
                    integral[n] = v
        super().__init__(name or f"P({base.name},{rank})", top, labels, self._product, integral,
                         provenance=("projective_bundle", base, rank))

    def component(self, d, n):
        return self._components[d][n]

    def index(self, k, db, i):
        return self._index[(k, db, i)]

    def power_coefficients(self, N: int) -> list:
        """Base classes ``R_k`` with ``h^N = sum_k h^k eta^* R_k`` (k < rank)."""
        while len(self._powers) <= N:
            M = len(self._powers)
            if M < self.rank:
                row = [self.base.one() if k == M else self.base.zero(M - k) for k in range(self.rank)]
            else:
                row = [self.base.zero(M - k) for k in range(self.rank)]
                for p in range(1, self.rank + 1):
                    sign = 1 if p % 2 == 1 else -1
                    cp = self.chern[p]
                    if cp.is_zero():
                        continue
                    prev = self._powers[M - p]
                    for k in range(self.rank):
                        row[k] = row[k] + sign * (cp * prev[k])
            self._powers.append(row)
        return self._powers[N]

    def h_power_times(self, N: int, b: Element) -> Element:
        """``h^N * eta^* b`` in normal form."""
        out = {}
        D = N + b.degree
        if D > self.top:
            return Element(self, D, {})
        for k, coeff in enumerate(self.power_coefficients(N)):
            u = coeff * b
            for i, c in u.vec.items():
                if u.degree <= self.base.top:
                    out[self._index[(k, u.degree, i)]] = out.get(self._index[(k, u.degree, i)], 0) + c
        return Element(self, D, linalg.vec(out))

    def _product(self, d, n, e, m):
        k, db, i = self._components[d][n]
        k2, db2, i2 = self._components[e][m]
        if db + db2 > self.base.top:
            return {}
        b = Element(self.base, db + db2, self.base.basis_product(db, i, db2, i2))
        return self.h_power_times(k + k2, b).vec

    @property
    def h(self) -> Element:
        return self.h_power_times(1, self.base.one())

    @property
    def eta_pull(self) -> AlgebraHom:
        return AlgebraHom(self.base, self, lambda d, i: {self._index[(0, d, i)]: Fraction(1)}, "eta^*")

    @property
    def eta_push(self) -> PushforwardMap:
        r = self.rank

        def col(d, n):
            k, db, i = self._components[d][n]
            return {i: Fraction(1)} if k == r - 1 else {}
        return PushforwardMap(self, self.base, -(r - 1), col, "eta_*", companion=self.eta_pull)

    def grothendieck_relation(self) -> Element:
        """``sum_p (-1)^p h^(r-p) eta^* c_p(F)`` computed by multiplication."""
        h = self.h
        eta = self.eta_pull
        out = self.zero(self.rank)
        for p in range(self.rank + 1):
            term = (h ** (self.rank - p)) * eta.apply(self.chern[p])
            out = out + (term if p % 2 == 0 else -term)
        return out


def projective_bundle(base: GradedAlgebra, chern: Sequence[Element], rank: int,
                      name: str | None = None) -> BundleAlgebra:
    return BundleAlgebra(base, chern, rank, name)


# ---------------------------------------------------------------------------
# blow-ups

@dataclass
class BlowupData:
    """Ambient X, center B of codimension c, restriction and Gysin maps, and
    the Chern classes ``c_1(N), ..., c_(c-1)(N)`` of the normal bundle
    (``c_top`` defaults to ``j^* j_* 1``)."""

    ambient: GradedAlgebra
    center: GradedAlgebra
    codim: int
    j_pull: AlgebraHom
    j_push: LinearMap
    normal_chern: Sequence[Element]
    c_top: Element | None = None
    name: str | None = None


class BlowupAlgebra(GradedAlgebra):
    """``eps^* CH(X) (+) sum_(k <= c-2) i_*(h^k eta^* CH(B))``."""

    def __init__(self, data: BlowupData, *, validate: bool = True):
        X, B, c = data.ambient, data.center, data.codim
        if c < 1:
            raise AlgebraError("codimension must be >= 1")
        if B.top != X.top - c:
            raise AlgebraError(f"center has dimension {B.top}, expected {X.top - c}")
        if data.j_pull.source is not X or data.j_pull.target is not B:
            raise MapError("j^* must map CH(X) to CH(B)")
        if data.j_push.source is not B or data.j_push.target is not X or data.j_push.shift != c:
            raise MapError(f"j_* must map CH(B) to CH(X) raising degrees by {c}")
        if validate:
            pf = check_projection_formula(data.j_push, data.j_pull)
            if not pf:
                raise MapError(f"inconsistent j^*/j_*: {pf.message}")
        normal = [B.one()] + list(data.normal_chern)
        if len(normal) > c:
            raise AlgebraError(f"expected at most {c - 1} non-top Chern classes")
        for p, x in enumerate(normal):
            if x.algebra is not B or (x.degree != p and not x.is_zero()):
                raise AlgebraError(f"Chern degree mismatch for c_{p}(N)")
        while len(normal) < c:
            normal.append(B.zero(len(normal)))
        normal = [x if x.degree == p else B.zero(p) for p, x in enumerate(normal)]
        top_class = data.c_top
        if top_class is None:
            top_class = data.j_pull.apply(data.j_push.apply(B.one()))
        elif top_class.algebra is not B or (top_class.degree != c and not top_class.is_zero()):
            raise AlgebraError(f"Chern degree mismatch for c_{c}(N)")
        if top_class.degree != c:
            top_class = B.zero(c)
        normal.append(top_class)
        self.data = data
        self.ambient, self.center, self.codim = X, B, c
        self.normal_chern = normal
        dual = [x if p % 2 == 0 else -x for p, x in enumerate(normal)]
        self.exceptional = BundleAlgebra(B, dual, c, name=f"P(N_{B.name})")
        E = self.exceptional
        self._components = []
        self._index = {}
        labels = []
        for D in range(X.top + 1):
            comps, labs = [], []
            for i in range(X.dim(D)):
                self._index[("eps", D, i)] = len(comps)
                comps.append(("eps", D, i))
                labs.append(f"eps^*({X.labels(D)[i]})")
            if D >= 1:
                for n, (k, db, i) in enumerate(E._components[D - 1]):
                    if k <= c - 2:
                        self._index[("E", D, n)] = len(comps)
                        comps.append(("E", D, n))
                        labs.append(f"i_*({E.labels(D - 1)[n]})")
            self._components.append(comps)
            labels.append(labs)
        integral = {self._index[("eps", X.top, i)]: v for i, v in X.integral.items()}
        super().__init__(data.name or f"Bl_{B.name}({X.name})", X.top, labels, self._product,
                         integral, poincare=X.poincare and B.poincare,
                         provenance=("blowup", data))

    def component(self, d, n):
        return self._components[d][n]

    # building blocks -------------------------------------------------------
    def eps_vec(self, x: Element) -> Vector:
        return {self._index[("eps", x.degree, i)]: c for i, c in x.vec.items()}

    def i_push_element(self, u: Element) -> Element:
        """``i_*`` from CH(E), using the key formula on the ``h^(c-1)`` part."""
        E, c = self.exceptional, self.codim
        if u.algebra is not E:
            raise AlgebraError("i_* expects a class on E")
        D = u.degree + 1
        if D > self.top:
            return Element(self, D, {})
        out: Vector = {}
        for n, coeff in u.vec.items():
            k, db, i = E._components[u.degree][n]
            if k <= c - 2:
                axpy(out, coeff, {self._index[("E", D, n)]: Fraction(1)})
                continue
            b = self.center.basis(db, i)
            axpy(out, coeff, self.eps_vec(self.data.j_push.apply(b)))
            for m in range(1, c):
                cm = self.normal_chern[m]
                if cm.is_zero():
                    continue
                rest = E.h_power_times(c - 1 - m, cm * b)
                axpy(out, -coeff, self.i_push_element(rest).vec)
        return Element(self, D, out)

    def _parts(self, d, n):
        kind, D, idx = self._components[d][n]
        if kind == "eps":
            return "eps", self.ambient.basis(D, idx)
        return "E", self.exceptional.basis(D - 1, idx)

    def _product(self, d, n, e, m):
        k1, a = self._parts(d, n)
        k2, b = self._parts(e, m)
        if k1 == "eps" and k2 == "eps":
            return self.eps_vec(a * b)
        if k1 == "E" and k2 == "E":
            E = self.exceptional
            return self.i_push_element(-(E.h * a * b)).vec
        x, u = (a, b) if k1 == "eps" else (b, a)
        E = self.exceptional
        return self.i_push_element(E.eta_pull.apply(self.data.j_pull.apply(x)) * u).vec

    # maps ------------------------------------------------------------------
    @property
    def eps_pull(self) -> AlgebraHom:
        X = self.ambient
        return AlgebraHom(X, self, lambda d, i: {self._index[("eps", d, i)]: Fraction(1)}, "eps^*")

    @property
    def eps_push(self) -> PushforwardMap:
        def col(d, n):
            kind, D, idx = self._components[d][n]
            return {idx: Fraction(1)} if kind == "eps" else {}
        return PushforwardMap(self, self.ambient, 0, col, "eps_*", companion=self.eps_pull)

    @property
    def i_push(self) -> PushforwardMap:
        E = self.exceptional
        return PushforwardMap(E, self, 1, lambda d, n: self.i_push_element(E.basis(d, n)).vec, "i_*",
                              companion=self.i_pull)

    @property
    def i_pull(self) -> AlgebraHom:
        E = self.exceptional

        def col(d, n):
            kind, D, idx = self._components[d][n]
            if kind == "eps":
                return E.eta_pull.apply(self.data.j_pull.apply(self.ambient.basis(D, idx))).vec
            return (-(E.h * E.basis(D - 1, idx))).vec
        return AlgebraHom(self, E, col, "i^*")

    @property
    def exceptional_class(self) -> Element:
        return self.i_push_element(self.exceptional.one())

    def e_part(self, x: Element) -> Element:
        """The component of ``x`` on the i_*-summands."""
        return Element(self, x.degree, {n: c for n, c in x.vec.items()
                                         if self._components[x.degree][n][0] == "E"})

    def gamma(self) -> Element:
        """Excess class ``sum_p h^(c-1-p) eta^* c_p(N)`` on E."""
        E = self.exceptional
        out = E.zero(self.codim - 1)
        for p in range(self.codim):
            out = out + E.h_power_times(self.codim - 1 - p, self.normal_chern[p])
        return out


def blowup(data: BlowupData, *, validate: bool = True) -> BlowupAlgebra:
    return BlowupAlgebra(data, validate=validate)


def blowup_map(source: BlowupAlgebra, target: BlowupAlgebra, ambient_map: AlgebraHom,
               center_map: AlgebraHom, name: str = "") -> AlgebraHom:
    """Hom of blow-ups induced by compatible maps of ambients and centers:
    ``eps^* x -> eps^* f(x)`` and ``i_*(h^k eta^* b) -> i_*(h^k eta^* g(b))``."""
    E1, E2 = source.exceptional, target.exceptional

    def col(d, n):
        kind, D, idx = source._components[d][n]
        if kind == "eps":
            return target.eps_vec(ambient_map.apply(source.ambient.basis(D, idx)))
        k, db, i = E1._components[D - 1][idx]
        gb = center_map.apply(source.center.basis(db, i))
        return target.i_push_element(E2.h_power_times(k, gb)).vec

    return AlgebraHom(source, target, col, name)


def blowup_identities_check(Y: BlowupAlgebra) -> Outcome:
    """``i^*[E] = -h``, key formula on every basis class of B,
    ``eps_* eps^* = id`` and ``i^* eps^* = eta^* j^*``."""
    E = Y.exceptional
    counts = {}
    if Y.i_pull.apply(Y.exceptional_class) != -E.h:
        return Outcome(False, "i^*[E] != -h")
    counts["i^*[E] = -h"] = 1
    gamma = Y.gamma()
    n = 0
    for d in range(Y.center.top + 1):
        for i in range(Y.center.dim(d)):
            b = Y.center.basis(d, i)
            lhs = Y.i_push_element(gamma * E.eta_pull.apply(b))
            rhs = Y.eps_pull.apply(Y.data.j_push.apply(b))
            if lhs != rhs:
                return Outcome(False, f"key formula fails on {Y.center.labels(d)[i]}")
            n += 1
    counts["key formula"] = n
    n = 0
    for d in range(Y.ambient.top + 1):
        for i in range(Y.ambient.dim(d)):
            x = Y.ambient.basis(d, i)
            if Y.eps_push.apply(Y.eps_pull.apply(x)) != x:
                return Outcome(False, f"eps_* eps^* != id on {Y.ambient.labels(d)[i]}")
            if Y.i_pull.apply(Y.eps_pull.apply(x)) != E.eta_pull.apply(Y.data.j_pull.apply(x)):
                return Outcome(False, f"i^* eps^* != eta^* j^* on {Y.ambient.labels(d)[i]}")
            n += 1
    counts["eps_* eps^* = id, i^* eps^* = eta^* j^*"] = n
    return Outcome(True, "blow-up identities hold", counts)


def jouanolou_dimensions(Y: BlowupAlgebra) -> Outcome:
    """``dim Y_p = dim X_p + sum_(k=0)^(c-2) dim B_(p-k-1)``."""
    X, B, c = Y.ambient, Y.center, Y.codim
    expected = tuple(X.dim(p) + sum(B.dim(p - k - 1) for k in range(c - 1)) for p in range(X.top + 1))
    ok = expected == Y.dims
    return Outcome(ok, "dimension identity holds" if ok else "dimension identity fails",
                   {"dims": Y.dims, "expected": expected})


# ---------------------------------------------------------------------------
# Mukai flop

def _interpolate(points: Sequence[tuple[Fraction, Fraction]]) -> list:
    """Coefficients (low to high) of the interpolating polynomial."""
    n = len(points)
    coeffs = [Fraction(0)] * n
    for a, (xa, ya) in enumerate(points):
        if not ya:
            continue
        basis = [Fraction(1)]
        denom = Fraction(1)
        for b, (xb, _) in enumerate(points):
            if b == a:
                continue
            basis = [Fraction(0)] + basis
            for t in range(len(basis) - 1):
                basis[t] -= xb * basis[t + 1]
            denom *= xa - xb
        for t, v in enumerate(basis):
            coeffs[t] += ya * v / denom
    return coeffs


def projective_space(r: int, generator: str = "k") -> GradedAlgebra:
    return build_algebra(Presentation.make(f"P{r}", [(generator, 1)], r, [{(r + 1,): 1}],
                                           {(r,): 1}, poincare=True))


def flop_ambient(r: int, m) -> tuple:
    """Formal model of a 2r-fold X containing P = P^r with ``deg(alpha|P) = m``:
    basis ``alpha^p`` and ``P_q = j_*(k^q)``; returns ``(X, B, j^*, j_*)``."""
    m = Fraction(m)
    B = projective_space(r)
    top = 2 * r
    labels = []
    for D in range(top + 1):
        labs = [f"alpha^{D}" if D else "1"]
        if D >= r:
            labs.append(f"j_*(k^{D - r})")
        labels.append(labs)
    self_int = (-1) ** r * (r + 1)

    def product(d, i, e, j):
        if i == 0 and j == 0:
            return {0: 1}
        if i == 1 and j == 1:
            # P_q P_q' is nonzero only for q = q' = 0
            return {1: self_int} if d == r and e == r else {}
        a = d if i == 0 else e
        return {1: m ** a}

    X = GradedAlgebra(f"X_flop(r={r})", top, labels, product, {0: 1, 1: 1},
                      provenance=("flop_ambient", r, m))
    k = B.generator("k")

    def jpull(d, i):
        if i == 0:
            return ((m ** d) * k ** d).vec
        return (self_int * k ** r).vec if d == r else {}

    def jpush(d, i):
        return {1: 1}

    j_pull = AlgebraHom(X, B, jpull, "j^*")
    j_push = PushforwardMap(B, X, r, jpush, "j_*", companion=j_pull)
    return X, B, j_pull, j_push


def flop_blowup(r: int, m) -> BlowupAlgebra:
    X, B, j_pull, j_push = flop_ambient(r, m)
    k = B.generator("k")
    normal = [((-1) ** p * comb(r + 1, p)) * k ** p for p in range(1, r)]
    c_top = ((-1) ** r * (r + 1)) * k ** r
    return blowup(BlowupData(X, B, r, j_pull, j_push, normal, c_top, name=f"Bl_P(X) r={r}"))


def flop_inner_identity(r: int) -> Outcome:
    """``sum_p (-1)^p binom(r+1, p) h^(r-p) eta^* k^p = 0`` on P(T_P), both in
    the bundle algebra and through a hom from an independent presentation."""
    B = projective_space(r)
    k = B.generator("k")
    chern = [comb(r + 1, p) * k ** p for p in range(r + 1)]
    E = projective_bundle(B, chern, r)
    h, kE = E.h, E.eta_pull.apply(k)
    total = E.zero(r)
    for p in range(r + 1):
        total = total + ((-1) ** p * comb(r + 1, p)) * (h ** (r - p)) * (kE ** p)
    rel = {}
    for p in range(r + 1):
        rel[(r - p, p)] = (-1) ** p * comb(r + 1, p)
    presented = build_algebra(Presentation.make(f"Q[h,k] r={r}", [("h", 1), ("k", 1)], 2 * r - 1,
                                                [{(0, r + 1): 1}, rel], {(r - 1, r): 1}))
    try:
        iso = make_hom(presented, E, {"h": h, "k": kE})
        bij = all(iso.rank(d) == E.dim(d) == presented.dim(d) for d in range(E.top + 1))
    except MapError as exc:
        return Outcome(False, f"presentation does not map to the bundle algebra: {exc}")
    ok = total.is_zero() and bij
    return Outcome(ok, "Chern cancellation holds" if ok else "Chern cancellation fails",
                   {"bundle_dims": E.dims, "presented_dims": presented.dims, "isomorphic": bij})


def mukai_flop_check(r: int, samples: int | None = None) -> Outcome:
    """Expand ``(eps^* alpha + m [E])^(r+1) - eps^*(alpha^(r+1))`` for enough
    integer values of m to interpolate every coefficient as a polynomial in m
    and certify that all of them vanish (in particular the E-part)."""
    if r < 1:
        raise ValueError("r must be >= 1")
    npts = samples or (2 * r + 4)
    values = []
    for t in range(npts):
        m = Fraction(t + 1)
        Y = flop_blowup(r, m)
        X = Y.ambient
        alpha = X.basis(1, 0)
        lhs = (Y.eps_pull.apply(alpha) + m * Y.exceptional_class) ** (r + 1)
        diff = lhs - Y.eps_pull.apply(alpha ** (r + 1))
        values.append((m, Y, diff))
    labels = values[0][1].labels(r + 1)
    coefficient_table = {}
    for n, lab in enumerate(labels):
        pts = [(m, diff.vec.get(n, Fraction(0))) for m, _, diff in values]
        coeffs = _interpolate(pts)
        coefficient_table[lab] = [c for c in coeffs]
    nonzero = {lab: cs for lab, cs in coefficient_table.items() if any(cs)}
    e_labels = [lab for lab in labels if lab.startswith("i_*")]
    e_nonzero = [lab for lab in e_labels if lab in nonzero]
    ok = not nonzero
    return Outcome(ok, "all E-supported terms cancel" if ok else "E-supported terms survive",
                   {"r": r, "sample_points": npts, "e_part_labels": e_labels,
                    "nonzero_coefficients": {k: [linalg.format_fraction(c) for c in v]
                                             for k, v in nonzero.items()},
                    "e_part_zero": not e_nonzero})
