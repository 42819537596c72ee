"""Exact GF(2) recomputation of the finite calculations behind the
30-dimensional Kervaire-invariant-one (Jones) manifold."""

__version__ = "0.1.0"
