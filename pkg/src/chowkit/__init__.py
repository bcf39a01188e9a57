"""Exact models of Chow rings and cohomology rings with the cycle class map.

Subpackages: ``gca`` (graded algebras), ``maps`` (homomorphisms and
pushforwards), ``geom`` (products, projective bundles, blow-ups), ``bb``
(quadratic forms and Bogomolov algebras), ``models`` (concrete varieties)
and ``cli`` (model files, verification suites, reports).
"""
__version__ = "0.1.0"
