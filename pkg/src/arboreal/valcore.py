"""Exact valuation arithmetic.

Valuations are :class:`fractions.Fraction` values or the signed infinities
:data:`INF` / :data:`NEG_INF`.  Nothing in here touches floats.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from functools import total_ordering
from typing import Optional, Union

__all__ = [
    "INF",
    "NEG_INF",
    "GroundField",
    "Rat",
    "ValExt",
    "as_rat",
    "fmt_rat",
    "fmt_val",
    "is_prime",
    "nu_threshold",
    "padic_val",
    "parse_rat",
    "parse_val",
]

Rat = Fraction


@total_ordering
class _Infinity:
    """Signed infinity, absorbing under addition with finite rationals."""

    __slots__ = ("sign",)

    def __init__(self, sign: int):
        self.sign = sign

    def __repr__(self) -> str:
        return "inf" if self.sign > 0 else "-inf"

    def __hash__(self) -> int:
        return hash(("arboreal-inf", self.sign))

    def __eq__(self, other) -> bool:
        return isinstance(other, _Infinity) and other.sign == self.sign

    def __lt__(self, other) -> bool:
        if isinstance(other, _Infinity):
            return self.sign < other.sign
        if isinstance(other, (int, Fraction)):
            return self.sign < 0
        return NotImplemented

    def __neg__(self) -> "_Infinity":
        return NEG_INF if self.sign > 0 else INF

    def __add__(self, other):
        if isinstance(other, _Infinity):
            if other.sign != self.sign:
                raise ArithmeticError("inf - inf is undefined")
            return self
        if isinstance(other, (int, Fraction)):
            return self
        return NotImplemented

    __radd__ = __add__

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                raise ArithmeticError("0 * inf is undefined")
            return self if other > 0 else -self
        return NotImplemented

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)) and other != 0:
            return self if other > 0 else -self
        return NotImplemented


INF = _Infinity(1)
NEG_INF = _Infinity(-1)

ValExt = Union[Fraction, _Infinity]


def is_infinite(x) -> bool:
    return isinstance(x, _Infinity)


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def as_rat(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return parse_rat(x)
    raise TypeError(f"cannot interpret {x!r} as an exact rational")


def _int_val(n: int, p: int) -> int:
    k = 0
    while n % p == 0:
        n //= p
        k += 1
    return k


def padic_val(q, p: int) -> ValExt:
    """p-adic valuation of a rational, normalized so that v(p) = 1.

    >>> padic_val(Fraction(-1, 4), 2)
    Fraction(-2, 1)
    >>> padic_val(0, 3)
    inf
    """
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    q = as_rat(q)
    if q == 0:
        return INF
    return Fraction(_int_val(abs(q.numerator), p) - _int_val(q.denominator, p))


@dataclass(frozen=True)
class GroundField:
    """Data about the local field K that the theory needs.

    In wild mode ``ell == p`` and valuations are scaled with v(p) = 1, so the
    value group of K is (1/e)Z.  In tame mode ``p`` may be 0 (only used for
    residue computations) and v(ell) = 0.
    """

    mode: str
    ell: int
    p: int
    e: int = 1
    mu_ell_in_K: bool = False
    k_finite: bool = True

    def __post_init__(self):
        if self.ell < 2:
            raise ValueError("ell must be at least 2")
        if self.e < 1:
            raise ValueError("ramification index e must be positive")
        if self.mode == "wild":
            if not is_prime(self.p) or self.ell != self.p:
                raise ValueError("wild mode needs ell = p with p prime")
        elif self.mode == "tame":
            if self.p != 0 and (not is_prime(self.p) or self.ell % self.p == 0):
                raise ValueError("tame mode needs p = 0 or a prime not dividing ell")
        else:
            raise ValueError(f"unknown mode {self.mode!r}")

    @classmethod
    def wild(cls, p: int, e: int = 1, mu_p_in_K: Optional[bool] = None,
             k_finite: bool = True) -> "GroundField":
        # mu_2 = {1, -1} lies in every field; for odd p it needs (p-1) | e at least
        if mu_p_in_K is None:
            mu_p_in_K = p == 2
        return cls("wild", p, p, e, mu_p_in_K, k_finite)

    @classmethod
    def tame(cls, ell: int, p: int = 0, mu_ell_in_K: bool = False,
             k_finite: bool = True) -> "GroundField":
        return cls("tame", ell, p, 1, mu_ell_in_K or ell == 2, k_finite)

    @property
    def is_wild(self) -> bool:
        return self.mode == "wild"

    @property
    def v_ell(self) -> Fraction:
        return Fraction(1) if self.is_wild else Fraction(0)

    def in_value_group(self, x: Fraction) -> bool:
        """Whether x lies in v(K^x), which is (1/e)Z in wild mode."""
        return (x * self.e).denominator == 1

    def to_json(self) -> dict:
        return {
            "mode": self.mode,
            "ell": self.ell,
            "p": self.p,
            "e": self.e,
            "mu_ell_in_K": self.mu_ell_in_K,
            "k_finite": self.k_finite,
        }


def nu_threshold(n, gf: GroundField) -> ValExt:
    """Threshold nu_n for 1 <= n, or nu_inf for ``n = INF``.

    ``n = 0`` returns :data:`NEG_INF` so that ``nu_{n-1} < v(c) < nu_n`` makes
    sense at n = 1.
    """
    ell = gf.ell
    if n is INF:
        return -Fraction(ell, ell - 1) * gf.v_ell
    if not isinstance(n, int) or n < 0:
        raise ValueError(f"bad threshold index {n!r}")
    if n == 0:
        return NEG_INF
    return -Fraction(ell ** (n + 1), (ell ** n - 1) * (ell - 1)) * gf.v_ell


_RAT_RE = re.compile(r"^\s*([+-]?\d+)\s*(?:/\s*(\d+))?\s*$")


def parse_rat(s: str) -> Fraction:
    """Parse ``"num/den"`` (den optional)."""
    m = _RAT_RE.match(s)
    if not m:
        raise ValueError(f"malformed rational {s!r}")
    den = int(m.group(2)) if m.group(2) else 1
    if den == 0:
        raise ValueError(f"zero denominator in {s!r}")
    return Fraction(int(m.group(1)), den)


def parse_val(s: str) -> ValExt:
    t = s.strip().lower()
    if t in ("inf", "+inf", "infinity"):
        return INF
    if t in ("-inf", "-infinity"):
        return NEG_INF
    return parse_rat(s)


def fmt_rat(x) -> str:
    x = as_rat(x)
    return f"{x.numerator}/{x.denominator}"


def fmt_val(x) -> str:
    if isinstance(x, _Infinity):
        return repr(x)
    return fmt_rat(x)
