"""Galois and ramification structure of iterated preimage towers of
z^ell - c over local fields, with exact brute-force cross-checks."""

from .valcore import INF, NEG_INF, GroundField, nu_threshold, padic_val

__version__ = "0.1.0"

__all__ = ["INF", "NEG_INF", "GroundField", "nu_threshold", "padic_val"]
