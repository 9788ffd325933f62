"""Resultants and the pairwise-difference polynomial.

Res_x(P(x), P(x + z)) is computed at integer points z = 0..d^2 from integer
Sylvester matrices (Bareiss elimination, fraction free) and interpolated.
For monic P of degree d it equals prod_{i,j} (z + a_i - a_j), so dividing by
z^d leaves a polynomial whose roots are the d(d-1) ordered differences.
"""

from __future__ import annotations

from fractions import Fraction
from typing import List, Sequence

from ..newton import ValMultiset
from .polys import RatPoly, root_val_multiset

__all__ = [
    "DEFAULT_RESULTANT_CAP",
    "bareiss_det",
    "difference_poly",
    "difference_val_multiset",
    "resultant",
    "sylvester_matrix",
]

DEFAULT_RESULTANT_CAP = 256


def sylvester_matrix(a: Sequence, b: Sequence) -> List[List]:
    """Sylvester matrix of coefficient lists given low degree first."""
    m, n = len(a) - 1, len(b) - 1
    size = m + n
    rows = []
    ha, hb = list(reversed(a)), list(reversed(b))
    for i in range(n):
        rows.append([0] * i + ha + [0] * (size - m - 1 - i))
    for i in range(m):
        rows.append([0] * i + hb + [0] * (size - n - 1 - i))
    return rows


def bareiss_det(mat: List[List[int]]) -> int:
    """Determinant of an integer matrix by fraction-free elimination."""
    M = [list(r) for r in mat]
    n = len(M)
    if n == 0:
        return 1
    sign, prev = 1, 1
    for k in range(n - 1):
        if M[k][k] == 0:
            for i in range(k + 1, n):
                if M[i][k] != 0:
                    M[k], M[i] = M[i], M[k]
                    sign = -sign
                    break
            else:
                return 0
        pivot = M[k][k]
        rk = M[k]
        for i in range(k + 1, n):
            ri = M[i]
            mik = ri[k]
            for j in range(k + 1, n):
                ri[j] = (ri[j] * pivot - mik * rk[j]) // prev
            ri[k] = 0
        prev = pivot
    return sign * M[n - 1][n - 1]


def resultant(P: RatPoly, Q: RatPoly) -> Fraction:
    la, lb = P.content_scale(), Q.content_scale()
    a = [int(c * la) for c in P.coeffs]
    b = [int(c * lb) for c in Q.coeffs]
    det = bareiss_det(sylvester_matrix(a, b))
    # Res(la P, lb Q) = la^deg Q * lb^deg P * Res(P, Q)
    return Fraction(det, la ** Q.degree * lb ** P.degree)


def _interpolate(xs: Sequence[int], ys: Sequence[Fraction]) -> RatPoly:
    n = len(xs)
    coef = list(ys)
    for j in range(1, n):
        for i in range(n - 1, j - 1, -1):
            coef[i] = (coef[i] - coef[i - 1]) / (xs[i] - xs[i - j])
    poly = RatPoly([coef[-1]])
    for i in range(n - 2, -1, -1):
        poly = poly * RatPoly([-xs[i], 1]) + coef[i]
    return poly


def difference_poly(P: RatPoly, cap: int = DEFAULT_RESULTANT_CAP) -> RatPoly:
    """Monic polynomial whose roots are the a_i - a_j, i != j, over roots of P."""
    d = P.degree
    if d < 1:
        raise ValueError("need a nonconstant polynomial")
    if d * d > cap:
        raise OverflowError(f"resultant degree {d * d} exceeds cap {cap}")
    P = P.monic()
    xs = list(range(d * d + 1))
    ys = [resultant(P, P.shift(x)) for x in xs]
    R = _interpolate(xs, ys)
    low = next(i for i, c in enumerate(R.coeffs) if c != 0)
    if low != d:
        raise ValueError("polynomial is not separable")
    return RatPoly(R.coeffs[d:])


def difference_val_multiset(P: RatPoly, p: int, cap: int = DEFAULT_RESULTANT_CAP,
                            squarefree: bool = False) -> ValMultiset:
    """Valuations of all ordered root differences of P.

    With ``squarefree=True`` the distinct roots of P are used instead of
    rejecting an inseparable P.
    """
    if squarefree:
        P = P.squarefree_part()
    return root_val_multiset(difference_poly(P, cap), p)
