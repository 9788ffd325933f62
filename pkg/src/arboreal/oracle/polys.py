"""Dense univariate polynomials with exact rational coefficients."""

from __future__ import annotations

from fractions import Fraction
from math import lcm
from typing import Iterable, List

from ..newton import ValMultiset, root_valuations
from ..valcore import as_rat, padic_val

__all__ = ["DEFAULT_DEGREE_CAP", "RatPoly", "iterate_poly", "root_val_multiset"]

DEFAULT_DEGREE_CAP = 256


class RatPoly:
    """Polynomial sum(coeffs[i] * z**i); stored without trailing zeros."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        cs = [as_rat(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs: List[Fraction] = cs

    @classmethod
    def z(cls) -> "RatPoly":
        return cls([0, 1])

    @classmethod
    def const(cls, c) -> "RatPoly":
        return cls([c])

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def lead(self) -> Fraction:
        return self.coeffs[-1]

    def is_zero(self) -> bool:
        return not self.coeffs

    def __eq__(self, other) -> bool:
        if isinstance(other, RatPoly):
            return self.coeffs == other.coeffs
        return NotImplemented

    def __hash__(self):
        return hash(tuple(self.coeffs))

    def __repr__(self) -> str:
        return f"RatPoly({[str(c) for c in self.coeffs]})"

    def __add__(self, other) -> "RatPoly":
        other = _lift(other)
        n = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + [Fraction(0)] * (n - len(self.coeffs))
        b = other.coeffs + [Fraction(0)] * (n - len(other.coeffs))
        return RatPoly(x + y for x, y in zip(a, b))

    __radd__ = __add__

    def __neg__(self) -> "RatPoly":
        return RatPoly(-c for c in self.coeffs)

    def __sub__(self, other) -> "RatPoly":
        return self + (-_lift(other))

    def __rsub__(self, other) -> "RatPoly":
        return _lift(other) - self

    def __mul__(self, other) -> "RatPoly":
        other = _lift(other)
        if self.is_zero() or other.is_zero():
            return RatPoly()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return RatPoly(out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "RatPoly":
        result, base = RatPoly([1]), self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __call__(self, x):
        """Evaluate at a number or compose with a polynomial (Horner)."""
        acc = RatPoly() if isinstance(x, RatPoly) else Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def divmod(self, other: "RatPoly"):
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        dq = len(rem) - len(other.coeffs)
        if dq < 0:
            return RatPoly(), RatPoly(rem)
        quot = [Fraction(0)] * (dq + 1)
        inv = 1 / other.lead
        for k in range(dq, -1, -1):
            f = rem[k + other.degree] * inv
            quot[k] = f
            if f:
                for i, b in enumerate(other.coeffs):
                    rem[k + i] -= f * b
        return RatPoly(quot), RatPoly(rem[:other.degree])

    def __floordiv__(self, other) -> "RatPoly":
        return self.divmod(_lift(other))[0]

    def __mod__(self, other) -> "RatPoly":
        return self.divmod(_lift(other))[1]

    def monic(self) -> "RatPoly":
        return RatPoly(c / self.lead for c in self.coeffs)

    def derivative(self) -> "RatPoly":
        return RatPoly(i * c for i, c in enumerate(self.coeffs) if i)

    def shift(self, t) -> "RatPoly":
        """P(z + t)."""
        return self(RatPoly([t, 1]))

    def gcd(self, other: "RatPoly") -> "RatPoly":
        a, b = self, other
        while not b.is_zero():
            a, b = b, a % b
        return a.monic() if not a.is_zero() else a

    def squarefree_part(self) -> "RatPoly":
        g = self.gcd(self.derivative())
        return (self // g).monic()

    def is_separable(self) -> bool:
        return self.gcd(self.derivative()).degree == 0

    def content_scale(self) -> int:
        """Least positive integer L with L * P integral."""
        return lcm(*(c.denominator for c in self.coeffs)) if self.coeffs else 1

    def to_json(self) -> List[str]:
        return [f"{c.numerator}/{c.denominator}" for c in self.coeffs]


def _lift(x) -> RatPoly:
    return x if isinstance(x, RatPoly) else RatPoly([x])


def iterate_poly(ell: int, c, n: int, a, degree_cap: int = DEFAULT_DEGREE_CAP) -> RatPoly:
    """f^n(z) - a for f(z) = z^ell - c."""
    if ell ** n > degree_cap:
        raise OverflowError(f"degree {ell ** n} exceeds cap {degree_cap}")
    c, a = as_rat(c), as_rat(a)
    P = RatPoly.z()
    for _ in range(n):
        P = P ** ell - c
    return P - a


def root_val_multiset(P: RatPoly, p: int) -> ValMultiset:
    if P.is_zero():
        raise ValueError("zero polynomial")
    return root_valuations([(i, padic_val(c, p)) for i, c in enumerate(P.coeffs)])
