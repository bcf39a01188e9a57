"""Graded linear maps: pullback homomorphisms, pushforwards, transfers.

A map is described by the image of each source basis vector.  Homs keep
degrees; pushforwards shift them by a fixed amount.  Everything is stored
lazily and cached, since some of the product algebras are large and only
a few columns of a map are ever needed.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Callable, Mapping

from . import linalg
from .gca import (AlgebraError, Element, GradedAlgebra, Outcome, PresentedAlgebra,
                  integrate, monomial_label, monomials)
from .linalg import Echelon, Vector, axpy


class MapError(ValueError):
    """Raised when a proposed map violates its contract."""


class LinearMap:
    """Linear map ``source -> target`` raising degrees by ``shift``.

    ``column(d, i)`` returns the sparse image of ``source.basis(d, i)``.
    """

    def __init__(self, source: GradedAlgebra, target: GradedAlgebra, shift: int,
                 column: Callable[[int, int], Mapping[int, Fraction]], name: str = ""):
        self.source = source
        self.target = target
        self.shift = shift
        self._column = column
        self._cache: dict = {}
        self.name = name

    def __repr__(self):
        return f"<{type(self).__name__} {self.name or '?'}: {self.source.name} -> {self.target.name}>"

    def column(self, d: int, i: int) -> Vector:
        key = (d, i)
        out = self._cache.get(key)
        if out is None:
            e = d + self.shift
            out = linalg.vec(self._column(d, i)) if 0 <= e <= self.target.top else {}
            self._cache[key] = out
        return out

    def __call__(self, x: Element) -> Element:
        return self.apply(x)

    def apply(self, x: Element) -> Element:
        if x.algebra is not self.source:
            raise AlgebraError(f"{self.name or 'map'}: expected an element of {self.source.name}, "
                               f"got one of {x.algebra.name}")
        out: Vector = {}
        for i, c in x.vec.items():
            axpy(out, c, self.column(x.degree, i))
        return Element(self.target, x.degree + self.shift, out)

    def matrix(self, d: int) -> list:
        """Columns of the degree-``d`` block as sparse vectors."""
        return [self.column(d, i) for i in range(self.source.dim(d))]

    def rank(self, d: int) -> int:
        return linalg.rank(self.matrix(d))


GradedLinearMap = LinearMap


def apply(f: LinearMap, x: Element) -> Element:
    return f.apply(x)


class AlgebraHom(LinearMap):
    """Degree-preserving unital ring homomorphism."""

    def __init__(self, source, target, column, name: str = ""):
        super().__init__(source, target, 0, column, name)

    def check_multiplicative(self, *, limit: int | None = None) -> Outcome:
        """Products of basis pairs map to products of images (exhaustive
        unless ``limit`` caps the number of pairs)."""
        A = self.source
        if self.column(0, 0) != {0: Fraction(1)}:
            return Outcome(False, "unit not preserved")
        count = 0
        for d in range(1, A.top + 1):
            for e in range(d, A.top + 1 - d):
                for i in range(A.dim(d)):
                    fx = self.apply(A.basis(d, i))
                    for j in range((i if e == d else 0), A.dim(e)):
                        lhs = self.apply(A.basis(d, i) * A.basis(e, j))
                        rhs = fx * self.apply(A.basis(e, j))
                        if lhs != rhs:
                            return Outcome(False, f"products not preserved on {A.labels(d)[i]}, {A.labels(e)[j]}",
                                           {"pair": [A.labels(d)[i], A.labels(e)[j]]})
                        count += 1
                        if limit is not None and count >= limit:
                            return Outcome(True, "sampled", {"pairs": count, "exhaustive": False})
        # degrees landing above the source top must die in the target
        for d in range(1, A.top + 1):
            for e in range(max(d, A.top + 1 - d), self.target.top + 1 - d):
                for i in range(A.dim(d)):
                    for j in range(A.dim(e)):
                        if not (self.apply(A.basis(d, i)) * self.apply(A.basis(e, j))).is_zero():
                            return Outcome(False, "truncation not respected",
                                           {"pair": [A.labels(d)[i], A.labels(e)[j]]})
        return Outcome(True, "exhaustive", {"pairs": count, "exhaustive": True})


def hom_from_basis(source, target, images: Mapping[tuple, Element] | Callable, name="") -> AlgebraHom:
    """Hom given by images of basis vectors ``(d, i) -> Element``."""
    def column(d, i):
        y = images(d, i) if callable(images) else images[(d, i)]
        if y.algebra is not target:
            raise MapError("image lies in the wrong algebra")
        if y.degree != d and not y.is_zero():
            raise MapError(f"image of a degree-{d} class has degree {y.degree}")
        return y.vec
    return AlgebraHom(source, target, column, name)


def make_hom(source: PresentedAlgebra, target: GradedAlgebra,
             generator_images: Mapping[str, Element], name: str = "") -> AlgebraHom:
    """Hom out of a presented algebra determined by generator images.

    Fails with :class:`MapError` if some relation does not map to zero, or
    if a monomial that vanishes by truncation in the source has a nonzero
    image."""
    if not isinstance(source, PresentedAlgebra):
        raise MapError("make_hom needs a presented source; use hom_from_basis otherwise")
    p = source.presentation
    names = p.generator_names
    missing = [n for n in names if n not in generator_images]
    if missing:
        raise MapError(f"no image for generators {missing}")
    images = []
    for n, deg in p.generators:
        y = generator_images[n]
        if y.algebra is not target:
            raise MapError(f"image of {n} lies in the wrong algebra")
        if y.degree != deg and not y.is_zero():
            raise MapError(f"image of {n} has degree {y.degree}, expected {deg}")
        images.append(y if y.degree == deg else target.zero(deg))

    def eval_monomial(m) -> Element:
        out = target.one()
        for y, e in zip(images, m):
            for _ in range(e):
                out = out * y
        return out

    for rel in p.relations:
        if not rel:
            continue
        e = p.degree_of(rel[0][0])
        if e > target.top:
            continue
        val = target.zero(e)
        for m, c in rel:
            val = val + c * eval_monomial(m)
        if not val.is_zero():
            text = " + ".join(f"{linalg.format_fraction(c)}*{monomial_label(names, m)}" for m, c in rel)
            raise MapError(f"relation {text} = 0 is not preserved: its image is {val!r}")
    degrees = [d for _, d in p.generators]
    for e in range(source.top + 1, target.top + 1):
        for m in monomials(degrees, e):
            if not eval_monomial(m).is_zero():
                raise MapError(f"monomial {monomial_label(names, m)} vanishes by truncation in the source "
                               f"but not in the target")

    def column(d, i):
        return eval_monomial(source._basis_monos[d][i]).vec

    return AlgebraHom(source, target, column, name)


def identity(A: GradedAlgebra) -> AlgebraHom:
    return AlgebraHom(A, A, lambda d, i: {i: Fraction(1)}, f"id_{A.name}")


def compose(f: LinearMap, g: LinearMap, name: str = "") -> LinearMap:
    """``f o g``."""
    if g.target is not f.source:
        raise AlgebraError("cannot compose: codomain and domain differ")

    def column(d, i):
        e = d + g.shift
        return f.apply(Element(g.target, e, g.column(d, i))).vec

    if isinstance(f, AlgebraHom) and isinstance(g, AlgebraHom):
        return AlgebraHom(g.source, f.target, column, name)
    return LinearMap(g.source, f.target, f.shift + g.shift, column, name)


class PushforwardMap(LinearMap):
    """Linear map with an optional companion pullback in the other direction."""

    def __init__(self, source, target, shift, column, name="", companion: AlgebraHom | None = None):
        super().__init__(source, target, shift, column, name)
        if companion is not None and (companion.source is not target or companion.target is not source):
            raise MapError("companion pullback must go target -> source")
        self.companion = companion


def check_projection_formula(push: LinearMap, pull: AlgebraHom | None = None, *,
                             limit: int | None = None) -> Outcome:
    """``push(x * pull(y)) == push(x) * y`` on all basis pairs."""
    pull = pull or getattr(push, "companion", None)
    if pull is None:
        return Outcome(False, "no pullback registered")
    X, Y = push.source, push.target
    count = 0
    for d in range(X.top + 1):
        for i in range(X.dim(d)):
            x = X.basis(d, i)
            px = push.apply(x)
            for e in range(1, Y.top + 1):
                if d + e > X.top:
                    break
                for j in range(Y.dim(e)):
                    y = Y.basis(e, j)
                    if push.apply(x * pull.apply(y)) != px * y:
                        return Outcome(False, f"projection formula fails on {X.labels(d)[i]}, {Y.labels(e)[j]}",
                                       {"pair": [X.labels(d)[i], Y.labels(e)[j]]})
                    count += 1
                    if limit is not None and count >= limit:
                        return Outcome(True, "sampled", {"pairs": count, "exhaustive": False})
    return Outcome(True, "exhaustive", {"pairs": count, "exhaustive": True})


# ---------------------------------------------------------------------------
# involutions and transfers

def check_involution(sigma: AlgebraHom) -> Outcome:
    A = sigma.source
    if sigma.target is not A:
        return Outcome(False, "involution must be an endomorphism")
    for d in range(A.top + 1):
        for i in range(A.dim(d)):
            x = A.basis(d, i)
            if sigma.apply(sigma.apply(x)) != x:
                return Outcome(False, f"sigma^2 != id on {A.labels(d)[i]}")
    return Outcome(True, "sigma^2 = id on every basis vector")


class InvariantAlgebra(GradedAlgebra):
    """Invariants of an involution, with the halved integral.

    The basis in degree d is the canonical echelon basis of the span of
    ``b + sigma(b)``; since each row has a unit pivot and zeros at the
    other pivots, coordinates of an invariant class are its pivot entries.
    """

    def __init__(self, ambient: GradedAlgebra, sigma: AlgebraHom, name: str | None = None):
        check = check_involution(sigma)
        if not check:
            raise MapError(f"not an involution: {check.message}")
        self.ambient = ambient
        self.sigma = sigma
        self._rows = []
        self._pivots = []
        for d in range(ambient.top + 1):
            ech = Echelon()
            for i in range(ambient.dim(d)):
                ech.add(linalg.add({i: Fraction(1)}, sigma.column(d, i)))
            self._rows.append(ech.basis())
            self._pivots.append(ech.pivots())
        labels = [[self._row_label(d, k) for k in range(len(rows))] for d, rows in enumerate(self._rows)]
        top = ambient.top
        integral = {}
        for k, row in enumerate(self._rows[top]):
            integral[k] = integrate(Element(ambient, top, row)) / 2
        super().__init__(name or f"({ambient.name})^sigma", top, labels, self._product, integral,
                         poincare=ambient.poincare, provenance=("invariants", ambient))

    def _row_label(self, d, k):
        row = self._rows[d][k]
        labels = self.ambient.labels(d)
        return "+".join(labels[i] if c == 1 else f"{linalg.format_fraction(c)}*{labels[i]}"
                        for i, c in sorted(row.items()))

    def lift(self, x: Element) -> Element:
        if x.algebra is not self:
            raise AlgebraError("lift expects an invariant class")
        out: Vector = {}
        for k, c in x.vec.items():
            axpy(out, c, self._rows[x.degree][k])
        return Element(self.ambient, x.degree, out)

    def coordinates(self, y: Element) -> Element:
        """Invariant class represented by a sigma-invariant ``y``."""
        if y.algebra is not self.ambient:
            raise AlgebraError("coordinates expects an ambient class")
        if self.sigma.apply(y) != y:
            raise MapError("class is not invariant")
        d = y.degree
        v = linalg.vec({k: y.vec.get(p, 0) for k, p in enumerate(self._pivots[d])})
        return Element(self, d, v)

    def _product(self, d, i, e, j):
        z = Element(self.ambient, d, self._rows[d][i]) * Element(self.ambient, e, self._rows[e][j])
        return self.coordinates(z).vec


def transfer_pair(A: GradedAlgebra, sigma: AlgebraHom, name: str | None = None):
    """Return ``(invariants, pull, push)``.

    ``pull`` is the inclusion of the invariant algebra, ``push`` sends
    ``x`` to ``x + sigma(x)`` in invariant coordinates."""
    Q = InvariantAlgebra(A, sigma, name)

    def pull_col(d, k):
        return Q._rows[d][k]

    pull = AlgebraHom(Q, A, pull_col, "pi^*")

    def push_col(d, i):
        y = Element(A, d, linalg.add({i: Fraction(1)}, sigma.column(d, i)))
        return Q.coordinates(y).vec

    push = PushforwardMap(A, Q, 0, push_col, "pi_*", companion=pull)
    return Q, pull, push


def check_transfer_identities(sigma: AlgebraHom, pull: AlgebraHom, push: LinearMap) -> Outcome:
    """``pull o push = id + sigma`` and ``push o pull = 2 id`` on bases."""
    A, Q = sigma.source, pull.source
    for d in range(A.top + 1):
        for i in range(A.dim(d)):
            x = A.basis(d, i)
            if pull.apply(push.apply(x)) != x + sigma.apply(x):
                return Outcome(False, f"pull(push(x)) != x + sigma x on {A.labels(d)[i]}")
    for d in range(Q.top + 1):
        for k in range(Q.dim(d)):
            y = Q.basis(d, k)
            if push.apply(pull.apply(y)) != 2 * y:
                return Outcome(False, f"push(pull(y)) != 2y in degree {d}")
    return Outcome(True, "pi^* pi_* = 1 + sigma and pi_* pi^* = 2")


def fiber_integrate_first_factor(product, w: Element, name: str = "") -> LinearMap:
    """``xi -> (pr_2)_*(pr_1^* w * xi)`` on a Kunneth product algebra."""
    first = getattr(product, "first", None)
    if first is None:
        raise AlgebraError("fiber integration needs a product algebra")
    if w.algebra is not first:
        raise AlgebraError("w must live on the first factor")
    second = product.second
    shift = w.degree - first.top

    def column(d, i):
        r, a, s, b = product.component(d, i)
        if r + w.degree != first.top:
            return {}
        c = integrate(w * first.basis(r, a))
        return {b: c} if c else {}

    return LinearMap(product, second, shift, column, name or "h")
