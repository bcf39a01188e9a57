"""Shared model types: configurations and the Chow/cohomology pair."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from ..bb import QuadraticSpace
from ..gca import (Element, GradedAlgebra, Outcome, check_commutative_associative, check_poincare,
                   integrate)
from ..linalg import as_fraction
from ..maps import AlgebraHom


class ConfigError(ValueError):
    """Raised for invalid model configurations."""


def _matrix(rows, what: str) -> tuple:
    try:
        m = tuple(tuple(as_fraction(x) for x in row) for row in rows)
    except TypeError as exc:
        raise ConfigError(f"{what}: {exc}") from None
    n = len(m)
    if any(len(r) != n for r in m):
        raise ConfigError(f"{what} must be square")
    for i in range(n):
        for j in range(n):
            if m[i][j] != m[j][i]:
                raise ConfigError(f"{what} is not symmetric at ({i}, {j})")
    return m


def default_transcendental(rho: int) -> tuple:
    """U + <-2>^(20 - rho): completes the Picard lattice to rank 22."""
    if not 1 <= rho <= 20:
        raise ConfigError("Picard rank must be between 1 and 20")
    t = 22 - rho
    g = [[0] * t for _ in range(t)]
    g[0][1] = g[1][0] = 1
    for k in range(2, t):
        g[k][k] = -2
    return tuple(tuple(Fraction(x) for x in row) for row in g)


@dataclass(frozen=True)
class K3Config:
    """Picard Gram matrix (even, symmetric) and a transcendental Gram matrix.

    The transcendental block defaults to ``U + <-2>^(20 - rho)`` so that
    ``b_2 = 22``; it must contain a hyperbolic plane in its first two
    coordinates, which supplies the classes ``tau``, ``tau'`` with
    ``<tau, tau'> = 1`` and ``<tau, tau> = 0``.
    """

    picard: tuple
    transcendental: tuple = ()

    def __post_init__(self):
        pic = _matrix(self.picard, "Picard Gram matrix")
        if not pic:
            raise ConfigError("Picard rank must be at least 1")
        for i, row in enumerate(pic):
            if row[i].denominator != 1 or row[i].numerator % 2:
                raise ConfigError(f"Picard Gram matrix must be even (entry ({i}, {i}) is {row[i]})")
        trans = _matrix(self.transcendental, "transcendental Gram matrix") if self.transcendental \
            else default_transcendental(len(pic))
        if len(trans) < 2:
            raise ConfigError("transcendental rank must be at least 2")
        if trans[0][0] != 0 or trans[0][1] <= 0:
            raise ConfigError("transcendental block must start with an isotropic tau and a partner tau' "
                              "with <tau, tau'> > 0")
        object.__setattr__(self, "picard", pic)
        object.__setattr__(self, "transcendental", trans)

    @property
    def rho(self) -> int:
        return len(self.picard)

    @property
    def t(self) -> int:
        return len(self.transcendental)

    @property
    def b2(self) -> int:
        return self.rho + self.t

    def require_b2(self, value: int = 22):
        if self.b2 != value:
            raise ConfigError(f"constructions through the diagonal need b_2 = {value} "
                              f"(so that the Euler characteristic is 24); got {self.b2}")

    @property
    def full_gram(self) -> list:
        n = self.b2
        g = [[Fraction(0)] * n for _ in range(n)]
        for i in range(self.rho):
            for j in range(self.rho):
                g[i][j] = self.picard[i][j]
        for i in range(self.t):
            for j in range(self.t):
                g[self.rho + i][self.rho + j] = self.transcendental[i][j]
        return g


def k3_config(rho: int) -> K3Config:
    """The bundled lattices: <2>, U, U + <-2>."""
    grams = {
        1: [[2]],
        2: [[0, 1], [1, 0]],
        3: [[0, 1, 0], [1, 0, 0], [0, 0, -2]],
    }
    if rho not in grams:
        raise ConfigError("bundled Picard ranks are 1, 2, 3")
    return K3Config(grams[rho])


@dataclass(frozen=True)
class CurveConfig:
    """Genus g >= 2 curve B with a divisor class l_B of degree d.

    ``CH^1(B)`` is modeled as span{l_B, K_B}; their independence is a model
    axiom, so configurations declaring ``K_B`` proportional to ``l_B`` are
    refused.
    """

    genus: int
    degree: int
    canonical_multiple_of_l: Fraction | None = None

    def __post_init__(self):
        if int(self.genus) != self.genus or self.genus < 2:
            raise ConfigError("genus must be an integer >= 2")
        if int(self.degree) != self.degree or self.degree < 1:
            raise ConfigError("degree must be a positive integer")
        if self.canonical_multiple_of_l is not None:
            raise ConfigError("K_B proportional to l_B contradicts the independence axiom")


@dataclass
class VarietyModel:
    """Chow model, cohomology model and the cycle class map between them."""

    name: str
    dim: int
    chow: GradedAlgebra
    coh: GradedAlgebra
    cycle: AlgebraHom
    point_class: Element
    q: QuadraticSpace | None = None
    classes: dict = field(default_factory=dict)
    maps: dict = field(default_factory=dict)
    axioms: list = field(default_factory=list)
    relations: list = field(default_factory=list)
    parts: dict = field(default_factory=dict)

    def check(self, *, associativity=True) -> dict:
        """The standing model invariants, one Outcome per entry."""
        out = {}
        out["cycle map is a ring hom"] = self.cycle.check_multiplicative()
        n = self.chow.top
        bad = [i for i in range(self.chow.dim(n))
               if integrate(self.cycle.apply(self.chow.basis(n, i))) != integrate(self.chow.basis(n, i))]
        out["integrals agree"] = Outcome(not bad, "cycle map preserves the integral" if not bad
                                         else f"integral mismatch on {bad}")
        pt = integrate(self.point_class)
        out["point class has degree 1"] = Outcome(pt == 1, f"integral of the point class is {pt}")
        out["cohomology pairing perfect"] = check_poincare(self.coh)
        if associativity:
            out["chow associative"] = check_commutative_associative(self.chow)
        return out


class FormalSpace:
    """One graded piece of an algebra extended by named symbol directions.

    Used where a class is known only through a geometric identity (for
    example the pushforward of ``q^*[o]`` along the incidence embedding,
    which has no Kunneth expression in the Chow model).  Each symbol may
    carry a cohomology image so the cycle map extends to the whole space.
    """

    def __init__(self, base: GradedAlgebra, degree: int, symbols: Sequence[str],
                 name: str = ""):
        self.base = base
        self.degree = degree
        self.symbols = tuple(symbols)
        if len(set(self.symbols)) != len(self.symbols):
            raise ValueError("symbol names must be unique")
        self._offset = base.dim(degree)
        self._sym_index = {s: self._offset + k for k, s in enumerate(self.symbols)}
        self.name = name or f"{base.name}[{degree}]+symbols"

    @property
    def dim(self) -> int:
        return self._offset + len(self.symbols)

    def from_base(self, x: Element) -> dict:
        if x.algebra is not self.base or (x.degree != self.degree and not x.is_zero()):
            raise ValueError(f"expected a degree-{self.degree} class of {self.base.name}")
        return dict(x.vec)

    def symbol(self, name: str, coeff=1) -> dict:
        return {self._sym_index[name]: as_fraction(coeff)}

    def base_part(self, v: dict) -> Element:
        return Element(self.base, self.degree, {k: c for k, c in v.items() if k < self._offset})

    def symbol_part(self, v: dict) -> dict:
        return {self.symbols[k - self._offset]: c for k, c in v.items() if k >= self._offset}

    def describe(self, v: dict) -> str:
        parts = []
        base = self.base_part(v)
        if not base.is_zero():
            parts.append(repr(base))
        for s, c in self.symbol_part(v).items():
            parts.append(f"{c}*{s}")
        return " + ".join(parts) if parts else "0"

    def image(self, v: dict, base_map, symbol_images: dict) -> Element:
        """Apply ``base_map`` to the base part and substitute symbol images."""
        out = base_map.apply(self.base_part(v))
        for s, c in self.symbol_part(v).items():
            out = out + c * symbol_images[s]
        return out
