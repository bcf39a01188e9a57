"""Exact sparse linear algebra over the rationals.

Vectors are plain ``dict[int, Fraction]`` with no zero entries.  Row
reduction always pivots on the smallest column index, so the reduced
row-echelon bases produced here are canonical: the same input span gives
the same rows, in the same order, every time.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping, Sequence

Vector = dict  # int -> Fraction


def as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, float):
        raise TypeError("floating point values are not accepted; use Fraction or int")
    return Fraction(x)


def vec(mapping: Mapping[int, object]) -> Vector:
    """Normalize a mapping into a sparse vector (drops zeros)."""
    out = {}
    for k, v in mapping.items():
        v = as_fraction(v)
        if v:
            out[k] = v
    return out


def dense_to_sparse(values: Sequence) -> Vector:
    return vec(dict(enumerate(values)))


def sparse_to_dense(v: Mapping[int, Fraction], n: int) -> tuple:
    return tuple(v.get(i, Fraction(0)) for i in range(n))


def axpy(y: Vector, a, x: Mapping[int, Fraction]) -> None:
    """In place ``y += a*x``."""
    if not a:
        return
    for k, xv in x.items():
        nv = y.get(k, 0) + a * xv
        if nv:
            y[k] = nv
        else:
            y.pop(k, None)


def add(x: Mapping, y: Mapping, a=1) -> Vector:
    out = dict(x)
    axpy(out, a, y)
    return out


def scale(x: Mapping, a) -> Vector:
    a = as_fraction(a)
    if not a:
        return {}
    return {k: a * v for k, v in x.items()}


def combine(terms: Iterable[tuple[object, Mapping]]) -> Vector:
    out: Vector = {}
    for a, x in terms:
        axpy(out, a, x)
    return out


class Echelon:
    """Incrementally maintained reduced row-echelon basis.

    With ``track=True`` each row remembers the combination of inserted
    vectors (by insertion index) that produced it, which is what kernel
    and solve computations need.
    """

    def __init__(self, track: bool = False):
        self.track = track
        self.rows: dict[int, Vector] = {}
        self.combs: dict[int, Vector] = {}
        self._count = 0

    @property
    def rank(self) -> int:
        return len(self.rows)

    def pivots(self) -> list[int]:
        return sorted(self.rows)

    def reduce(self, v: Mapping[int, Fraction], comb: Vector | None = None):
        r = dict(v)
        for p in [p for p in r if p in self.rows]:
            c = r.get(p)
            if c:
                axpy(r, -c, self.rows[p])
                if comb is not None:
                    axpy(comb, -c, self.combs[p])
        return r

    def contains(self, v: Mapping[int, Fraction]) -> bool:
        return not self.reduce(v)

    def add(self, v: Mapping[int, Fraction]):
        """Insert ``v``.  Returns the dependency combination if ``v`` was
        already in the span (tracked mode), ``None`` if the rank grew, and
        a bool in untracked mode (True when the rank grew)."""
        index = self._count
        self._count += 1
        comb = {index: Fraction(1)} if self.track else None
        r = self.reduce(v, comb)
        if not r:
            if self.track:
                return comb
            return False
        p = min(r)
        inv = 1 / r[p]
        r = {k: x * inv for k, x in r.items()}
        if comb is not None:
            comb = {k: x * inv for k, x in comb.items()}
        for q, row in self.rows.items():
            c = row.get(p)
            if c:
                axpy(row, -c, r)
                if comb is not None:
                    axpy(self.combs[q], -c, comb)
        self.rows[p] = r
        if comb is not None:
            self.combs[p] = comb
        return None if self.track else True

    def basis(self) -> list[Vector]:
        return [dict(self.rows[p]) for p in sorted(self.rows)]

    def coordinates(self, v: Mapping[int, Fraction]) -> Vector | None:
        """Coordinates of ``v`` with respect to :meth:`basis` (None if outside)."""
        if self.reduce(v):
            return None
        order = sorted(self.rows)
        return vec({i: v.get(p, 0) for i, p in enumerate(order)})


def rank(vectors: Iterable[Mapping[int, Fraction]]) -> int:
    e = Echelon()
    for v in vectors:
        e.add(v)
    return e.rank


def row_echelon(vectors: Iterable[Mapping[int, Fraction]]) -> list[Vector]:
    e = Echelon()
    for v in vectors:
        e.add(v)
    return e.basis()


def kernel(vectors: Sequence[Mapping[int, Fraction]]) -> list[Vector]:
    """Basis (canonical echelon form) of the relations ``sum c_i v_i = 0``.

    The returned vectors are indexed by position in ``vectors``.
    """
    e = Echelon(track=True)
    deps = []
    for v in vectors:
        comb = e.add(v)
        if comb is not None:
            deps.append(comb)
    return row_echelon(deps)


def solve(vectors: Sequence[Mapping[int, Fraction]], target: Mapping[int, Fraction]) -> Vector | None:
    """Some ``c`` with ``sum c_i v_i == target``, or None."""
    e = Echelon(track=True)
    for v in vectors:
        e.add(v)
    comb: Vector = {}
    r = e.reduce(target, comb)
    if r:
        return None
    # target - sum(comb-combination) == 0 where comb tracks -coefficients
    return scale(comb, -1)


def matrix_inverse(m: Sequence[Sequence]) -> list[list[Fraction]]:
    n = len(m)
    a = [[as_fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)]
         for i, row in enumerate(m)]
    for col in range(n):
        piv = next((r for r in range(col, n) if a[r][col] != 0), None)
        if piv is None:
            raise ZeroDivisionError("matrix is singular")
        a[col], a[piv] = a[piv], a[col]
        inv = 1 / a[col][col]
        a[col] = [x * inv for x in a[col]]
        for r in range(n):
            if r != col and a[r][col] != 0:
                f = a[r][col]
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
    return [row[n:] for row in a]


def determinant(m: Sequence[Sequence]) -> Fraction:
    n = len(m)
    a = [[as_fraction(x) for x in row] for row in m]
    det = Fraction(1)
    for col in range(n):
        piv = next((r for r in range(col, n) if a[r][col] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != col:
            a[col], a[piv] = a[piv], a[col]
            det = -det
        det *= a[col][col]
        for r in range(col + 1, n):
            if a[r][col] != 0:
                f = a[r][col] / a[col][col]
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
    return det


def format_fraction(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"
