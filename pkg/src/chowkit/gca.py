"""Finite-dimensional evenly graded commutative algebras over Q.

Degrees are codimensions: a cohomology-type algebra stores ``H^{2p}`` in
degree ``p``.  Every algebra carries, per degree, an ordered list of basis
labels and a product on basis elements returning sparse rational vectors.
Products landing above ``top`` vanish.

Algebras given by generators and relations are built with
:func:`build_algebra`, which computes normal forms degree by degree by
exact row reduction of ``ideal_d = span{monomial * relation}``.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Mapping, Sequence

from . import linalg
from .linalg import Echelon, Vector, as_fraction, axpy, format_fraction


class AlgebraError(ValueError):
    """Raised on degree or algebra mismatches."""


class PresentationError(ValueError):
    """Raised for inhomogeneous relations, unknown generators and
    inconsistent integrals."""


@dataclass
class Outcome:
    """Result of a mechanical check: success flag plus supporting data."""

    ok: bool
    message: str = ""
    data: dict = field(default_factory=dict)

    def __bool__(self) -> bool:
        return self.ok


class GradedAlgebra:
    """Graded commutative algebra with a chosen basis in each degree.

    ``product(d, i, e, j)`` must return the sparse coordinate vector of
    ``basis(d, i) * basis(e, j)`` in degree ``d + e`` (only called when
    ``d + e <= top``).  ``integral`` maps top-degree basis indices to
    rationals.  Results of ``product`` are cached; algebras are treated as
    immutable once built.
    """

    def __init__(self, name: str, top: int, labels: Sequence[Sequence[str]],
                 product: Callable[[int, int, int, int], Mapping[int, Fraction]],
                 integral: Mapping[int, Fraction] | None = None, *,
                 poincare: bool = False, provenance: object = None):
        if len(labels) != top + 1:
            raise AlgebraError("need one label list per degree 0..top")
        if len(labels[0]) != 1:
            raise AlgebraError("degree 0 must be one-dimensional")
        self.name = name
        self.top = top
        self._labels = [tuple(l) for l in labels]
        self._product = product
        self._cache: dict = {}
        self.integral = linalg.vec(integral or {})
        self.poincare = poincare
        self.provenance = provenance
        self._label_index = None

    def __repr__(self):
        return f"<{type(self).__name__} {self.name} dims={self.dims}>"

    @property
    def dims(self) -> tuple:
        return tuple(len(l) for l in self._labels)

    def dim(self, d: int) -> int:
        if 0 <= d <= self.top:
            return len(self._labels[d])
        return 0

    def labels(self, d: int) -> tuple:
        return self._labels[d] if 0 <= d <= self.top else ()

    def index_of(self, label: str) -> tuple[int, int]:
        if self._label_index is None:
            self._label_index = {l: (d, i) for d, ls in enumerate(self._labels)
                                 for i, l in enumerate(ls)}
        return self._label_index[label]

    def basis_product(self, d: int, i: int, e: int, j: int) -> Vector:
        if d + e > self.top:
            return {}
        key = (d, i, e, j)
        out = self._cache.get(key)
        if out is None:
            out = linalg.vec(self._product(d, i, e, j))
            self._cache[key] = out
        return out

    # element constructors -------------------------------------------------
    def element(self, d: int, coords) -> "Element":
        if isinstance(coords, Mapping):
            v = linalg.vec(coords)
        else:
            coords = list(coords)
            if len(coords) != self.dim(d):
                raise AlgebraError(f"degree {d} has dimension {self.dim(d)}, got {len(coords)} coordinates")
            v = linalg.dense_to_sparse(coords)
        if any(k < 0 or k >= self.dim(d) for k in v):
            raise AlgebraError("coordinate index out of range")
        return Element(self, d, v)

    def basis(self, d: int, i: int) -> "Element":
        return Element(self, d, {i: Fraction(1)})

    def basis_elements(self, d: int) -> list:
        return [self.basis(d, i) for i in range(self.dim(d))]

    def one(self) -> "Element":
        return Element(self, 0, {0: Fraction(1)})

    def zero(self, d: int) -> "Element":
        return Element(self, d, {})

    def __getitem__(self, label: str) -> "Element":
        d, i = self.index_of(label)
        return self.basis(d, i)

    def integrate(self, x: "Element") -> Fraction:
        return integrate(x)


class Element:
    """Homogeneous element: algebra, degree and sparse coordinates."""

    __slots__ = ("algebra", "degree", "vec")

    def __init__(self, algebra: GradedAlgebra, degree: int, v: Vector):
        self.algebra = algebra
        self.degree = degree
        self.vec = v if 0 <= degree <= algebra.top else {}

    @property
    def coords(self) -> tuple:
        return linalg.sparse_to_dense(self.vec, self.algebra.dim(self.degree))

    def is_zero(self) -> bool:
        return not self.vec

    def __bool__(self):
        return bool(self.vec)

    def _check(self, other: "Element"):
        if not isinstance(other, Element):
            raise AlgebraError(f"expected an Element, got {type(other).__name__}")
        if other.algebra is not self.algebra:
            raise AlgebraError(f"algebra mismatch: {self.algebra.name} vs {other.algebra.name}")

    def __add__(self, other):
        if isinstance(other, int) and other == 0:
            return self
        self._check(other)
        if other.degree != self.degree:
            if other.is_zero():
                return self
            if self.is_zero():
                return other
            raise AlgebraError("only homogeneous sums are supported")
        return Element(self.algebra, self.degree, linalg.add(self.vec, other.vec))

    __radd__ = __add__

    def __neg__(self):
        return Element(self.algebra, self.degree, linalg.scale(self.vec, -1))

    def __sub__(self, other):
        if isinstance(other, int) and other == 0:
            return self
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, Element):
            return multiply(self, other)
        return Element(self.algebra, self.degree, linalg.scale(self.vec, as_fraction(other)))

    def __rmul__(self, other):
        return Element(self.algebra, self.degree, linalg.scale(self.vec, as_fraction(other)))

    def __truediv__(self, other):
        return self * (1 / as_fraction(other))

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power")
        out = self.algebra.one()
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other):
        if isinstance(other, int) and other == 0:
            return self.is_zero()
        if not isinstance(other, Element) or other.algebra is not self.algebra:
            return NotImplemented
        if self.degree != other.degree:
            return self.is_zero() and other.is_zero()
        return self.vec == other.vec

    def __hash__(self):
        return hash((id(self.algebra), self.degree, tuple(sorted(self.vec.items()))))

    def __repr__(self):
        if not self.vec:
            return f"0[deg {self.degree}]"
        labels = self.algebra.labels(self.degree)
        parts = []
        for k in sorted(self.vec):
            c = self.vec[k]
            parts.append(f"{format_fraction(c)}*{labels[k]}")
        return " + ".join(parts)


def multiply(x: Element, y: Element) -> Element:
    x._check(y)
    A = x.algebra
    d = x.degree + y.degree
    if d > A.top:
        return Element(A, d, {})
    out: Vector = {}
    for i, a in x.vec.items():
        for j, b in y.vec.items():
            axpy(out, a * b, A.basis_product(x.degree, i, y.degree, j))
    return Element(A, d, out)


def integrate(x: Element) -> Fraction:
    A = x.algebra
    if x.degree != A.top:
        if x.is_zero():
            return Fraction(0)
        raise AlgebraError(f"integral is defined on degree {A.top}, got degree {x.degree}")
    return sum((c * A.integral.get(i, 0) for i, c in x.vec.items()), Fraction(0))


# ---------------------------------------------------------------------------
# presentations

Monomial = tuple  # exponent tuple, one entry per generator


def _poly(mapping: Mapping[Monomial, object]) -> tuple:
    items = []
    for m, c in mapping.items():
        c = as_fraction(c)
        if c:
            items.append((tuple(m), c))
    return tuple(sorted(items, reverse=True))


@dataclass(frozen=True)
class Presentation:
    """Generators (name, degree), relations and a (partial) integral.

    Relations are polynomials given as mappings from exponent tuples to
    coefficients; each one is meant to vanish.  ``integral`` assigns values
    to top-degree polynomials (usually monomials).
    """

    name: str
    generators: tuple
    top_degree: int
    relations: tuple = ()
    integral: tuple = ()
    poincare: bool = False

    @classmethod
    def make(cls, name, generators, top_degree, relations=(), integral=(), poincare=False):
        gens = tuple((str(n), int(d)) for n, d in generators)
        rels = tuple(_poly(r) for r in relations)
        integ = []
        for target, value in (integral.items() if isinstance(integral, Mapping) else integral):
            if isinstance(target, Mapping):
                target = _poly(target)
            else:
                target = _poly({tuple(target): 1})
            integ.append((target, as_fraction(value)))
        return cls(name, gens, int(top_degree), rels, tuple(integ), poincare)

    @property
    def generator_names(self) -> tuple:
        return tuple(n for n, _ in self.generators)

    def degree_of(self, m: Monomial) -> int:
        return sum(e * d for e, (_, d) in zip(m, self.generators))


def monomials(degrees: Sequence[int], d: int) -> list:
    """All exponent tuples of weighted degree ``d``, lexicographically
    decreasing in generator declaration order."""
    out = []

    def rec(k, remaining, prefix):
        if k == len(degrees):
            if remaining == 0:
                out.append(tuple(prefix))
            return
        for e in range(remaining // degrees[k], -1, -1):
            rec(k + 1, remaining - e * degrees[k], prefix + [e])

    rec(0, d, [])
    return out


def monomial_label(names: Sequence[str], m: Monomial) -> str:
    parts = []
    for n, e in zip(names, m):
        if e == 1:
            parts.append(n)
        elif e > 1:
            parts.append(f"{n}^{e}")
    return "*".join(parts) if parts else "1"


def _validate(p: Presentation) -> None:
    names = p.generator_names
    if len(set(names)) != len(names):
        raise PresentationError("generator names must be unique")
    if any(d < 1 for _, d in p.generators):
        raise PresentationError("generator degrees must be >= 1")
    if p.top_degree < 0:
        raise PresentationError("top_degree must be >= 0")
    for rel in p.relations:
        degs = {p.degree_of(m) for m, _ in rel}
        if any(len(m) != len(names) for m, _ in rel):
            raise PresentationError("relation references an unknown generator")
        if len(degs) > 1:
            raise PresentationError(f"inhomogeneous relation (degrees {sorted(degs)})")


class PresentedAlgebra(GradedAlgebra):
    """Algebra built from a :class:`Presentation`; basis = standard monomials."""

    def __init__(self, presentation: Presentation):
        p = presentation
        _validate(p)
        self.presentation = p
        degrees = [d for _, d in p.generators]
        names = p.generator_names
        self._monos = []      # per degree: ordered list of monomials
        self._mono_index = []
        self._reducers = []   # per degree: Echelon of ideal_d
        self._basis_monos = []
        rels_by_deg: dict[int, list] = {}
        for rel in p.relations:
            if not rel:
                continue
            rels_by_deg.setdefault(p.degree_of(rel[0][0]), []).append(rel)
        for d in range(p.top_degree + 1):
            ms = monomials(degrees, d)
            index = {m: k for k, m in enumerate(ms)}
            ech = Echelon()
            for e, rels in rels_by_deg.items():
                if e > d:
                    continue
                for m in monomials(degrees, d - e):
                    for rel in rels:
                        v: Vector = {}
                        for rm, c in rel:
                            prod = tuple(a + b for a, b in zip(m, rm))
                            axpy(v, c, {index[prod]: Fraction(1)})
                        ech.add(v)
            self._monos.append(ms)
            self._mono_index.append(index)
            self._reducers.append(ech)
            piv = set(ech.pivots())
            self._basis_monos.append([m for k, m in enumerate(ms) if k not in piv])
        if not self._basis_monos[0]:
            raise PresentationError("relations kill the unit")
        self._basis_pos = [{m: i for i, m in enumerate(bm)} for bm in self._basis_monos]
        labels = [[monomial_label(names, m) for m in bm] for bm in self._basis_monos]
        super().__init__(p.name, p.top_degree, labels, self._table_product,
                         poincare=p.poincare, provenance=p)
        self.integral = self._solve_integral()

    # normal forms ---------------------------------------------------------
    def normal_form(self, m: Monomial) -> Vector:
        """Coordinates of monomial ``m`` in the standard-monomial basis."""
        d = self.presentation.degree_of(m)
        if d > self.top:
            return {}
        col = self._mono_index[d][tuple(m)]
        residual = self._reducers[d].reduce({col: Fraction(1)})
        pos = self._basis_pos[d]
        ms = self._monos[d]
        return linalg.vec({pos[ms[k]]: c for k, c in residual.items()})

    def poly_normal_form(self, poly: Iterable[tuple[Monomial, Fraction]]) -> Element:
        poly = list(poly)
        if not poly:
            raise PresentationError("empty polynomial has no degree")
        d = self.presentation.degree_of(poly[0][0])
        out: Vector = {}
        for m, c in poly:
            if self.presentation.degree_of(m) != d:
                raise PresentationError("inhomogeneous polynomial")
            axpy(out, c, self.normal_form(m))
        return Element(self, d, out)

    def _table_product(self, d, i, e, j):
        m = tuple(a + b for a, b in zip(self._basis_monos[d][i], self._basis_monos[e][j]))
        return self.normal_form(m)

    def monomial(self, **exps) -> Element:
        names = self.presentation.generator_names
        m = tuple(exps.get(n, 0) for n in names)
        return Element(self, self.presentation.degree_of(m), self.normal_form(m))

    def generator(self, name: str) -> Element:
        names = self.presentation.generator_names
        if name not in names:
            raise AlgebraError(f"unknown generator {name!r}")
        m = tuple(int(n == name) for n in names)
        d = self.presentation.degree_of(m)
        if d > self.top:
            return Element(self, d, {})
        return Element(self, d, self.normal_form(m))

    def generators(self) -> dict:
        return {n: self.generator(n) for n in self.presentation.generator_names}

    def _solve_integral(self) -> Vector:
        p = self.presentation
        n = self.top
        eqs = []
        for poly, value in p.integral:
            if any(p.degree_of(m) != n for m, _ in poly):
                raise PresentationError("integral assigned to a polynomial that is not of top degree")
            nf = self.poly_normal_form(poly).vec
            if not nf and value:
                raise PresentationError(
                    "inconsistent presentation: integral assigned to a class that normalizes to zero")
            eqs.append((nf, value))
        if not eqs:
            return {}
        # row (nf | -value) encodes  sum nf_j x_j - value = 0
        size = self.dim(n)
        ech = Echelon()
        for nf, value in eqs:
            row = dict(nf)
            if value:
                row[size] = -value
            ech.add(row)
        if size in ech.rows:
            raise PresentationError("inconsistent presentation: integral values contradict each other")
        # undetermined unknowns are completed with 0
        return linalg.vec({piv: -row.get(size, 0) for piv, row in ech.rows.items()})


def build_algebra(p: Presentation) -> PresentedAlgebra:
    return PresentedAlgebra(p)


def table_algebra(name: str, top: int, labels, products: Mapping, integral=None, *,
                  poincare=False, provenance=None) -> GradedAlgebra:
    """Algebra from an explicit table ``{(d, i, e, j): vector}``; missing
    entries are zero."""
    table = {k: linalg.vec(v) for k, v in products.items()}

    def product(d, i, e, j):
        if (d, i, e, j) in table:
            return table[(d, i, e, j)]
        if d == 0:
            return {j: Fraction(1)}
        if e == 0:
            return {i: Fraction(1)}
        return table.get((e, j, d, i), {})

    return GradedAlgebra(name, top, labels, product, integral, poincare=poincare,
                         provenance=provenance)


# ---------------------------------------------------------------------------
# subspaces

class Subspace:
    """Subspace of one graded piece, stored as a canonical RREF basis."""

    def __init__(self, algebra: GradedAlgebra, degree: int, vectors: Iterable[Mapping] = ()):
        self.algebra = algebra
        self.degree = degree
        self._ech = Echelon()
        for v in vectors:
            self._ech.add(v)

    @classmethod
    def span(cls, elements: Sequence[Element], algebra=None, degree=None) -> "Subspace":
        elements = list(elements)
        if not elements:
            if algebra is None:
                raise AlgebraError("span of nothing needs algebra and degree")
            return cls(algebra, degree)
        A, d = elements[0].algebra, elements[0].degree
        for x in elements:
            if x.algebra is not A:
                raise AlgebraError("span: algebra mismatch")
            if x.degree != d and not x.is_zero():
                raise AlgebraError("span: degree mismatch")
        return cls(A, d, (x.vec for x in elements))

    @property
    def dim(self) -> int:
        return self._ech.rank

    def __len__(self):
        return self.dim

    def basis(self) -> list:
        return [Element(self.algebra, self.degree, v) for v in self._ech.basis()]

    def rows(self) -> list:
        return self._ech.basis()

    def _check(self, x: Element):
        if x.algebra is not self.algebra:
            raise AlgebraError("subspace: algebra mismatch")
        if x.degree != self.degree and not x.is_zero():
            raise AlgebraError("subspace: degree mismatch")

    def contains(self, x: Element) -> bool:
        self._check(x)
        return self._ech.contains(x.vec)

    __contains__ = contains

    def __add__(self, other: "Subspace") -> "Subspace":
        if other.algebra is not self.algebra or other.degree != self.degree:
            raise AlgebraError("sum of subspaces from different pieces")
        return Subspace(self.algebra, self.degree, self.rows() + other.rows())

    def extended(self, elements: Iterable[Element]) -> "Subspace":
        elements = list(elements)
        for x in elements:
            self._check(x)
        return Subspace(self.algebra, self.degree, self.rows() + [x.vec for x in elements])

    def __eq__(self, other):
        if not isinstance(other, Subspace):
            return NotImplemented
        return (other.algebra is self.algebra and other.degree == self.degree
                and self.rows() == other.rows())

    def __repr__(self):
        return f"<Subspace of {self.algebra.name} deg {self.degree}, dim {self.dim}>"


def span(elements, algebra=None, degree=None) -> Subspace:
    return Subspace.span(elements, algebra, degree)


def contains(S: Subspace, x: Element) -> bool:
    return S.contains(x)


def subspace_sum(S: Subspace, T: Subspace) -> Subspace:
    return S + T


def kernel_of(linear_map, S: Subspace) -> Subspace:
    """Kernel of ``linear_map`` restricted to ``S`` (as a subspace of S's piece)."""
    basis = S.basis()
    images = [linear_map(x) for x in basis]
    deps = linalg.kernel([y.vec for y in images])
    vecs = []
    for comb in deps:
        v: Vector = {}
        for k, c in comb.items():
            axpy(v, c, basis[k].vec)
        vecs.append(v)
    return Subspace(S.algebra, S.degree, vecs)


def dch(A: GradedAlgebra, p: int) -> Subspace:
    """Span of all p-fold products of degree-1 classes (the unit for p = 0)."""
    if p < 0 or p > A.top:
        raise AlgebraError(f"degree {p} outside 0..{A.top}")
    if p == 0:
        return Subspace(A, 0, [{0: Fraction(1)}])
    gens = A.basis_elements(1)
    current = Subspace(A, 1, (g.vec for g in gens))
    for d in range(2, p + 1):
        current = Subspace(A, d, ((g * x).vec for x in current.basis() for g in gens))
    return current


# ---------------------------------------------------------------------------
# structural checks

def check_commutative_associative(A: GradedAlgebra, *, limit: int | None = None) -> Outcome:
    """Exhaustive commutativity on basis pairs and associativity on basis
    triples of positive degree with total degree <= top.

    With ``limit`` set, at most that many triples are examined, in a fixed
    deterministic order (used for very large Kunneth products whose
    associativity is inherited from their factors)."""
    n = A.top
    pairs = 0
    for d in range(1, n + 1):
        for e in range(d, n + 1 - d):
            for i in range(A.dim(d)):
                for j in range(A.dim(e)):
                    if A.basis_product(d, i, e, j) != A.basis_product(e, j, d, i):
                        return Outcome(False, f"not commutative on {A.labels(d)[i]}, {A.labels(e)[j]}")
                    pairs += 1
    triples = 0
    for d in range(1, n + 1):
        for e in range(1, n + 1 - d):
            for f in range(1, n + 1 - d - e):
                for i in range(A.dim(d)):
                    x = A.basis(d, i)
                    for j in range(A.dim(e)):
                        xy = x * A.basis(e, j)
                        for k in range(A.dim(f)):
                            z = A.basis(f, k)
                            if xy * z != x * (A.basis(e, j) * z):
                                return Outcome(False, "not associative on "
                                               f"{A.labels(d)[i]}, {A.labels(e)[j]}, {A.labels(f)[k]}")
                            triples += 1
                            if limit is not None and triples >= limit:
                                return Outcome(True, "sampled", {"pairs": pairs, "triples": triples,
                                                                 "exhaustive": False})
    # unit
    for d in range(n + 1):
        for i in range(A.dim(d)):
            if A.basis_product(0, 0, d, i) != {i: Fraction(1)}:
                return Outcome(False, f"unit fails on {A.labels(d)[i]}")
    return Outcome(True, "exhaustive", {"pairs": pairs, "triples": triples, "exhaustive": True})


def check_relations(A: PresentedAlgebra) -> Outcome:
    """Every relation times every monomial (up to top degree) normalizes to 0."""
    p = A.presentation
    degrees = [d for _, d in p.generators]
    count = 0
    for rel in p.relations:
        if not rel:
            continue
        e = p.degree_of(rel[0][0])
        for d in range(e, A.top + 1):
            for m in monomials(degrees, d - e):
                shifted = [(tuple(a + b for a, b in zip(m, rm)), c) for rm, c in rel]
                if not A.poly_normal_form(shifted).is_zero():
                    return Outcome(False, f"relation times {monomial_label(p.generator_names, m)} is nonzero")
                count += 1
    return Outcome(True, "all relation multiples vanish", {"checked": count})


def pairing_matrix_rank(A: GradedAlgebra, d: int) -> int:
    rows = []
    for i in range(A.dim(d)):
        row = {}
        for j in range(A.dim(A.top - d)):
            v = integrate(Element(A, A.top, A.basis_product(d, i, A.top - d, j)))
            if v:
                row[j] = v
        rows.append(row)
    return linalg.rank(rows)


def check_poincare(A: GradedAlgebra) -> Outcome:
    """(x, y) -> integral(x*y) is perfect between degrees d and top - d."""
    ranks = {}
    for d in range(A.top + 1):
        if A.dim(d) != A.dim(A.top - d):
            return Outcome(False, f"dim {d} != dim {A.top - d}", {"dims": A.dims})
        if d > A.top - d:
            continue
        r = pairing_matrix_rank(A, d)
        ranks[d] = r
        if r != A.dim(d):
            return Outcome(False, f"pairing degenerate in degree {d}", {"ranks": ranks})
    return Outcome(True, "perfect pairing", {"ranks": ranks})


def sample_associativity(A: GradedAlgebra, count: int, seed: int = 0) -> Outcome:
    """Commutativity and associativity on ``count`` random basis triples of
    positive degree (deterministic for a given seed)."""
    rng = random.Random(seed)
    n = A.top
    shapes = [(d, e, f) for d in range(1, n + 1) for e in range(1, n + 1 - d)
              for f in range(1, n + 1 - d - e) if A.dim(d) and A.dim(e) and A.dim(f)]
    if not shapes:
        return Outcome(True, "no triples of positive degree", {"triples": 0})
    for _ in range(count):
        d, e, f = rng.choice(shapes)
        i, j, k = rng.randrange(A.dim(d)), rng.randrange(A.dim(e)), rng.randrange(A.dim(f))
        x, y, z = A.basis(d, i), A.basis(e, j), A.basis(f, k)
        if x * y != y * x:
            return Outcome(False, f"not commutative on {A.labels(d)[i]}, {A.labels(e)[j]}")
        if (x * y) * z != x * (y * z):
            return Outcome(False, "not associative on "
                           f"{A.labels(d)[i]}, {A.labels(e)[j]}, {A.labels(f)[k]}")
    return Outcome(True, "sampled", {"triples": count, "seed": seed, "exhaustive": False})
