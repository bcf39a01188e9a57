"""Quadratic forms on degree-one classes and what they control.

Polynomials on a quadratic space V are stored in the symmetric algebra SV
with basis monomials in a fixed basis ``e_1..e_m`` of V.  For
``x = sum x_i e_i`` one has ``L(x^k) = k(k-1) q(x) x^(k-2)`` with
``L = sum_ij G_ij d_i d_j``; the kernel of L on S^k V (the harmonic part) is
the span of k-th powers of isotropic vectors over an algebraically closed
field.  The Bogomolov algebra A(V) is SV modulo the ideal generated by the
harmonic part in degree r+1, truncated at 2r.
"""
from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial
from typing import Sequence

from . import linalg
from .gca import (AlgebraError, Element, GradedAlgebra, Outcome, Presentation, PresentationError,
                  PresentedAlgebra, Subspace, dch, integrate, monomials, pairing_matrix_rank)
from .linalg import Vector, as_fraction, axpy


class DegenerateFormError(ValueError):
    """Raised when a construction needs a nondegenerate form."""


class QuadraticSpace:
    """Rational vector space with a symmetric Gram matrix; ``q(x) = b(x, x)``."""

    def __init__(self, gram: Sequence[Sequence], names: Sequence[str] | None = None):
        g = [[as_fraction(x) for x in row] for row in gram]
        m = len(g)
        if any(len(row) != m for row in g):
            raise ValueError("Gram matrix must be square")
        for i in range(m):
            for j in range(m):
                if g[i][j] != g[j][i]:
                    raise ValueError(f"Gram matrix is not symmetric at ({i}, {j})")
        self.gram = g
        self.m = m
        self.names = tuple(names) if names else tuple(f"e{i + 1}" for i in range(m))
        self.det = linalg.determinant(g) if m else Fraction(1)

    @property
    def dim(self) -> int:
        return self.m

    @property
    def nondegenerate(self) -> bool:
        return self.det != 0

    def require_nondegenerate(self):
        if not self.nondegenerate:
            raise DegenerateFormError("the quadratic form is degenerate")

    def b(self, x: Sequence, y: Sequence) -> Fraction:
        return sum((as_fraction(x[i]) * self.gram[i][j] * as_fraction(y[j])
                    for i in range(self.m) for j in range(self.m)), Fraction(0))

    def q(self, x: Sequence) -> Fraction:
        return self.b(x, x)

    def inverse(self) -> list:
        self.require_nondegenerate()
        return linalg.matrix_inverse(self.gram)

    def __repr__(self):
        return f"QuadraticSpace(gram={[[linalg.format_fraction(x) for x in r] for r in self.gram]})"

    def __eq__(self, other):
        return isinstance(other, QuadraticSpace) and other.gram == self.gram


def hyperbolic(n_planes: int) -> QuadraticSpace:
    m = 2 * n_planes
    g = [[0] * m for _ in range(m)]
    for k in range(n_planes):
        g[2 * k][2 * k + 1] = g[2 * k + 1][2 * k] = 1
    return QuadraticSpace(g)


# ---------------------------------------------------------------------------
# symmetric powers

def symmetric_algebra(V: QuadraticSpace, top: int) -> PresentedAlgebra:
    """Free commutative algebra on V truncated above ``top``."""
    gens = [(n, 1) for n in V.names]
    return PresentedAlgebra(Presentation.make(f"S({V.m})", gens, top))


def power_of_vector(S: PresentedAlgebra, x: Sequence, k: int) -> Element:
    """``(sum x_i e_i)^k`` in S^k V via the multinomial expansion."""
    m = len(S.presentation.generators)
    out: Vector = {}
    for a in monomials([1] * m, k):
        c = Fraction(factorial(k))
        for xi, ai in zip(x, a):
            c = c * as_fraction(xi) ** ai / factorial(ai)
        if c:
            axpy(out, c, S.normal_form(a))
    return Element(S, k, out)


class Contraction:
    """``L = sum_ij G_ij d_i d_j : S^k V -> S^(k-2) V`` (monomial bases)."""

    def __init__(self, V: QuadraticSpace, k: int, S: PresentedAlgebra | None = None):
        V.require_nondegenerate()
        if k < 0:
            raise ValueError("k must be >= 0")
        self.space = V
        self.k = k
        self.algebra = S or symmetric_algebra(V, max(k, 2))
        S = self.algebra
        m = V.m
        self.columns = []
        for a in S._basis_monos[k] if k <= S.top else []:
            col: Vector = {}
            if k >= 2:
                for i in range(m):
                    for j in range(m):
                        g = V.gram[i][j]
                        if not g:
                            continue
                        b = list(a)
                        c = Fraction(b[i])
                        b[i] -= 1
                        if b[i] < 0:
                            continue
                        c *= b[j]
                        b[j] -= 1
                        if b[j] < 0 or not c:
                            continue
                        axpy(col, g * c, S.normal_form(tuple(b)))
            self.columns.append(col)

    def apply(self, x: Element) -> Element:
        out: Vector = {}
        for i, c in x.vec.items():
            axpy(out, c, self.columns[i])
        return Element(self.algebra, self.k - 2, out) if self.k >= 2 else self.algebra.zero(0)

    __call__ = apply

    @property
    def rank(self) -> int:
        return linalg.rank(self.columns)


def contraction(V: QuadraticSpace, k: int) -> Contraction:
    if k < 2:
        raise ValueError("contraction needs k >= 2")
    return Contraction(V, k)


def dual_form_element(V: QuadraticSpace, S: PresentedAlgebra) -> Element:
    """``qhat = 1/2 sum (G^-1)_ij e_i e_j`` in S^2 V."""
    inv = V.inverse()
    out: Vector = {}
    for i in range(V.m):
        for j in range(V.m):
            if inv[i][j]:
                a = [0] * V.m
                a[i] += 1
                a[j] += 1
                axpy(out, inv[i][j] / 2, S.normal_form(tuple(a)))
    return Element(S, 2, out)


def harmonic_subspace(V: QuadraticSpace, k: int, S: PresentedAlgebra | None = None) -> Subspace:
    V.require_nondegenerate()
    S = S or symmetric_algebra(V, max(k, 2))
    if k < 2:
        return Subspace(S, k, ({i: Fraction(1)} for i in range(S.dim(k))))
    L = Contraction(V, k, S)
    deps = linalg.kernel(L.columns)
    return Subspace(S, k, deps)


def isotropic_power_span(V: QuadraticSpace, k: int, S: PresentedAlgebra | None = None) -> Subspace:
    """Span of k-th powers of isotropic vectors, computed as the harmonic kernel."""
    return harmonic_subspace(V, k, S)


def find_vector(V: QuadraticSpace, predicate, budget: int = 3):
    """Deterministic search: basis vectors, then integer combinations with
    entries in ``[-budget, budget]`` ordered by max-norm."""
    m = V.m
    for i in range(m):
        x = [0] * m
        x[i] = 1
        if predicate(x):
            return x
    for bound in range(1, budget + 1):
        for x in itertools.product(range(-bound, bound + 1), repeat=m):
            if max(abs(c) for c in x) != bound or not any(x):
                continue
            if predicate(list(x)):
                return list(x)
    return None


def sample_isotropic_vectors(V: QuadraticSpace, count: int, seed: int = 0, bound: int = 20) -> list:
    """Rational isotropic vectors ``q(w) v - 2 b(v, w) w`` for pseudo-random
    integer w, with v the seed isotropic vector or an earlier sample (a
    single seed only reaches one other line in a hyperbolic plane)."""
    v = find_vector(V, lambda x: V.q(x) == 0 and any(x))
    if v is None:
        raise DegenerateFormError("no small rational isotropic vector to seed the sampler")
    rng = random.Random(seed)
    out = [v]
    while len(out) < count:
        base = rng.choice(out)
        w = [rng.randint(-bound, bound) for _ in range(V.m)]
        x = [V.q(w) * vi - 2 * V.b(base, w) * wi for vi, wi in zip(base, w)]
        if any(x):
            g = 0
            for c in x:
                g = math.gcd(g, int(c))
            out.append([c / g for c in x] if g > 1 else x)
    return out[:count]


def sampling_oracle(V: QuadraticSpace, k: int, count: int = 200, seed: int = 0) -> Outcome:
    """Compare the harmonic kernel with the span of sampled isotropic powers."""
    S = symmetric_algebra(V, max(k, 2))
    H = harmonic_subspace(V, k, S)
    samples = sample_isotropic_vectors(V, count, seed)
    for x in samples:
        if V.q(x) != 0:
            return Outcome(False, "sampler produced a non-isotropic vector")
    spanned = Subspace.span([power_of_vector(S, x, k) for x in samples], S, k)
    ok = spanned == H
    return Outcome(ok, "sampled powers span the harmonic kernel" if ok else "sampled span differs",
                   {"k": k, "samples": count, "seed": seed, "harmonic_dim": H.dim, "sampled_dim": spanned.dim})


# ---------------------------------------------------------------------------
# Bogomolov algebra

class BogomolovAlgebra(PresentedAlgebra):
    """``SV / (harmonic part in degrees r+1..2r)``, truncated at 2r."""

    def __init__(self, V: QuadraticSpace, r: int):
        V.require_nondegenerate()
        if r < 1:
            raise ValueError("r must be >= 1")
        S = symmetric_algebra(V, 2 * r)
        relations = []
        for e in range(r + 1, 2 * r + 1):
            for row in harmonic_subspace(V, e, S).rows():
                relations.append({S._basis_monos[e][n]: c for n, c in row.items()})
        qr = dual_form_element(V, S) ** r
        target = {S._basis_monos[2 * r][n]: c for n, c in qr.vec.items()}
        gens = [(n, 1) for n in V.names]
        name = f"A(V) m={V.m} r={r}"
        try:
            p = Presentation.make(name, gens, 2 * r, relations, [(target, 1)], poincare=True)
            super().__init__(p)
            self.normalization = "integral of qhat^r = 1, qhat = 1/2 sum (G^-1)_ij e_i e_j"
        except PresentationError:
            p = Presentation.make(name, gens, 2 * r, relations, poincare=True)
            super().__init__(p)
            first = {0: Fraction(1)} if self.dim(2 * r) else {}
            self.integral = first
            self.normalization = "qhat^r vanishes; first top basis class has integral 1"
        self.space = V
        self.r = r


def bogomolov_algebra(V: QuadraticSpace, r: int) -> BogomolovAlgebra:
    return BogomolovAlgebra(V, r)


def gorenstein_check(A: GradedAlgebra) -> Outcome:
    """One-dimensional top degree, perfect complementary pairings, and no
    socle below the top."""
    n = A.top
    data = {"dims": A.dims}
    if A.dim(n) != 1:
        return Outcome(False, f"top degree has dimension {A.dim(n)}", data)
    ranks = {}
    for d in range(n + 1):
        if A.dim(d) != A.dim(n - d):
            return Outcome(False, f"dim {d} != dim {n - d}", data)
        ranks[d] = pairing_matrix_rank(A, d)
        if ranks[d] != A.dim(d):
            data["pairing_ranks"] = ranks
            return Outcome(False, f"pairing degenerate in degree {d}", data)
    data["pairing_ranks"] = ranks
    socle = {}
    for d in range(n):
        # x with x * A_1 = 0: kernel of the stacked multiplication map
        cols = []
        for i in range(A.dim(d)):
            stacked = {}
            for j in range(A.dim(1)):
                for t, c in A.basis_product(d, i, 1, j).items():
                    stacked[j * A.dim(d + 1) + t] = c
            cols.append(stacked)
        dim_socle = len(linalg.kernel(cols))
        socle[d] = dim_socle
        if dim_socle:
            data["socle_dims"] = socle
            return Outcome(False, f"socle element in degree {d}", data)
    socle[n] = 1
    data["socle_dims"] = socle
    return Outcome(True, "Gorenstein with socle in the top degree", data)


# ---------------------------------------------------------------------------
# Fujiki relation

def _poly_mul(p: dict, q: dict) -> dict:
    out: dict = {}
    for a, x in p.items():
        for b, y in q.items():
            e = tuple(i + j for i, j in zip(a, b))
            v = out.get(e, 0) + x * y
            if v:
                out[e] = v
            else:
                out.pop(e, None)
    return out


@dataclass
class FujikiResult:
    value: Fraction | None
    certified: bool
    witness: list | None
    normalization: str = ""
    residual: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return self.certified


def fujiki_lambda(A: GradedAlgebra, V: QuadraticSpace | None = None, r: int | None = None, *,
                  normalization: str | None = None, budget: int = 3) -> FujikiResult:
    """``lambda`` with ``integral(x^(2r)) = lambda q(x)^r`` on degree-one classes.

    ``V`` is the form in the basis of ``A``'s degree-1 piece (defaults to the
    algebra's own space for Bogomolov algebras)."""
    V = V or getattr(A, "space", None)
    if V is None:
        raise AlgebraError("no quadratic form supplied")
    r = r if r is not None else A.top // 2
    if 2 * r != A.top:
        raise AlgebraError(f"integral lives in degree {A.top}, expected {2 * r}")
    if V.m != A.dim(1):
        raise AlgebraError("form dimension does not match degree 1")
    norm = normalization or getattr(A, "normalization", "model integral")
    basis1 = A.basis_elements(1)

    def top_integral(x):
        y = sum((c * b for c, b in zip(x, basis1)), A.zero(1))
        return integrate(y ** (2 * r))

    witness = find_vector(V, lambda x: V.q(x) != 0, budget)
    if witness is None:
        return FujikiResult(None, False, None, norm, {"inconclusive": f"no non-isotropic vector with entries <= {budget}"})
    lam = top_integral(witness) / V.q(witness) ** r
    # integral side: sum over monomials a of multinomial(2r; a) * integral(e^a)
    m = V.m
    residual = {}
    qpoly = {}
    for i in range(m):
        for j in range(m):
            if V.gram[i][j]:
                a = [0] * m
                a[i] += 1
                a[j] += 1
                a = tuple(a)
                qpoly[a] = qpoly.get(a, 0) + V.gram[i][j]
    qr = {tuple([0] * m): Fraction(1)}
    for _ in range(r):
        qr = _poly_mul(qr, qpoly)
    for a in monomials([1] * m, 2 * r):
        prod = A.one()
        for i, e in enumerate(a):
            for _ in range(e):
                prod = prod * basis1[i]
        coeff = Fraction(factorial(2 * r))
        for e in a:
            coeff /= factorial(e)
        value = coeff * integrate(prod) - lam * qr.get(a, 0)
        if value:
            residual[a] = value
    return FujikiResult(lam, not residual, witness, norm, residual)


# ---------------------------------------------------------------------------
# weak splitting criteria

@dataclass
class WeakSplittingVerdict:
    criterion_i: bool
    criterion_ii: bool
    criterion_iii: bool | None
    kernel_dims: dict
    witnesses: dict
    harmonic_image_dim: int | None = None

    @property
    def agree(self) -> bool:
        vals = [self.criterion_i, self.criterion_ii]
        if self.criterion_iii is not None:
            vals.append(self.criterion_iii)
        return len(set(vals)) == 1


def cycle_kernel_on_dch(cycle, p: int) -> Subspace:
    from .gca import kernel_of
    return kernel_of(cycle.apply, dch(cycle.source, p))


def product_map_image(A: GradedAlgebra, H: Subspace, k: int) -> Subspace:
    """Image of a subspace of S^k(A_1) under ``e^a -> prod of basis classes``."""
    S = H.algebra
    basis1 = A.basis_elements(1)
    images = {}
    out = []
    for row in H.rows():
        y = A.zero(k)
        for n, c in row.items():
            a = S._basis_monos[k][n]
            if a not in images:
                prod = A.one()
                for i, e in enumerate(a):
                    for _ in range(e):
                        prod = prod * basis1[i]
                images[a] = prod
            y = y + c * images[a]
        out.append(y)
    return Subspace.span(out, A, k)


def weak_splitting_check(model, r: int, q: QuadraticSpace | None = "model") -> WeakSplittingVerdict:
    """Criteria: (i) cycle map injective on every DCH^p, (ii) injective on
    DCH^(r+1), (iii) the harmonic part of S^(r+1) CH^1 dies in CH^(r+1)."""
    cycle = model.cycle
    A = cycle.source
    kernels, witnesses = {}, {}
    for p in range(1, A.top + 1):
        K = cycle_kernel_on_dch(cycle, p)
        kernels[p] = K.dim
        if K.dim:
            witnesses[p] = K.basis()
    crit_i = all(v == 0 for v in kernels.values())
    crit_ii = kernels.get(r + 1, 0) == 0
    if q == "model":
        q = getattr(model, "q", None)
    crit_iii, image_dim = None, None
    if q is not None and r + 1 <= A.top:
        H = harmonic_subspace(q, r + 1)
        image = product_map_image(A, H, r + 1)
        image_dim = image.dim
        crit_iii = image.dim == 0
    return WeakSplittingVerdict(crit_i, crit_ii, crit_iii, kernels, witnesses, image_dim)
