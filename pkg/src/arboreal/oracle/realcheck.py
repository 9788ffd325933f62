"""Depth-limited test that every iterated preimage of a under z^2 - c is real.

Node values are kept as dyadic enclosures [lo, hi] / 2^prec with integer
lo, hi.  Rational nodes (the root, and square roots of rational squares)
are also carried exactly so that touching zero is decided without
rounding.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import isqrt
from typing import List, Optional, Tuple

from ..valcore import as_rat

__all__ = ["RealCheck", "real_all_real_check"]

ALL_REAL_TO_DEPTH = "AllRealToDepth"
COMPLEX_AT_DEPTH = "ComplexAtDepth"
UNDECIDED = "Undecided"


@dataclass(frozen=True)
class RealCheck:
    verdict: str
    depth: Optional[int] = None

    def to_json(self) -> dict:
        return {"verdict": self.verdict, "depth": self.depth}


def _floor_scaled(x: Fraction, prec: int) -> int:
    return (x.numerator << prec) // x.denominator


def _ceil_scaled(x: Fraction, prec: int) -> int:
    return -((-x.numerator << prec) // x.denominator)


def _exact_sqrt(x: Fraction) -> Optional[Fraction]:
    if x < 0:
        return None
    n, d = isqrt(x.numerator), isqrt(x.denominator)
    if n * n == x.numerator and d * d == x.denominator:
        return Fraction(n, d)
    return None


# node: (lo, hi, exact) with value in [lo, hi] / 2^prec; exact is a Fraction or None
Node = Tuple[int, int, Optional[Fraction]]


def _run(c: Fraction, a: Fraction, depth: int, prec: int):
    """Returns ("complex", d) / ("real", None) / ("undecided", None)."""
    c_lo, c_hi = _floor_scaled(c, prec), _ceil_scaled(c, prec)
    level: List[Node] = [(_floor_scaled(a, prec), _ceil_scaled(a, prec), a)]
    straddled = False
    for d in range(1, depth + 1):
        nxt: List[Node] = []
        for lo, hi, exact in level:
            if exact is not None:
                s = c + exact
                if s < 0:
                    return "complex", d
                if d == depth:
                    continue
                root = _exact_sqrt(s)
                if root is not None:
                    r_lo, r_hi = _floor_scaled(root, prec), _ceil_scaled(root, prec)
                    nxt.append((r_lo, r_hi, root))
                    nxt.append((-r_hi, -r_lo, -root))
                    continue
                s_lo, s_hi = _floor_scaled(s, prec), _ceil_scaled(s, prec)
            else:
                s_lo, s_hi = c_lo + lo, c_hi + hi
                if s_hi < 0:
                    return "complex", d
                if s_lo < 0:
                    straddled = True
                    s_lo = 0
                if d == depth:
                    continue
            # sqrt(s / 2^prec) * 2^prec = sqrt(s * 2^prec)
            r_lo = isqrt(s_lo << prec)
            r_hi = isqrt(s_hi << prec)
            if r_hi * r_hi < (s_hi << prec):
                r_hi += 1
            nxt.append((r_lo, r_hi, None))
            nxt.append((-r_hi, -r_lo, None))
        level = nxt
    return ("undecided", None) if straddled else ("real", None)


def real_all_real_check(k: int, c, a, depth: int = 10, precision: int = 4096,
                        start_precision: int = 64) -> RealCheck:
    """Explore the full binary preimage tree of a under z^2 - c to ``depth``.

    Precision (bits) doubles from ``start_precision`` up to ``precision``
    while some enclosure of c + x straddles zero.
    """
    if k != 2:
        raise ValueError("only k = 2 is checked here; k > 2 is always complex")
    c, a = as_rat(c), as_rat(a)
    if c == 0:
        raise ValueError("c must be nonzero")
    prec = start_precision
    while True:
        status, d = _run(c, a, depth, prec)
        if status == "complex":
            return RealCheck(COMPLEX_AT_DEPTH, d)
        if status == "real":
            return RealCheck(ALL_REAL_TO_DEPTH, depth)
        if prec >= precision:
            return RealCheck(UNDECIDED, None)
        prec = min(2 * prec, precision)
