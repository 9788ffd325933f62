"""Forward orbits of z^ell - c over finite fields, and exact cycle checks.

Finite fields F_q, q = p^d with d <= 4, use a polynomial basis over F_p.
Elements are stored as integers whose base-p digits are the coefficients.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from math import gcd
from typing import List, Optional, Sequence, Tuple

from .valcore import as_rat, is_prime, padic_val

__all__ = [
    "FiniteField",
    "ResidueReport",
    "exact_cycle_check",
    "orbit_analysis",
    "reduce_mod_p",
    "residue_report",
    "tame_verdict",
]

UNRAMIFIED_CASE = "Unramified"
INDEX_DIVIDES_L = "IndexDividesL"
UNRAMIFIED_SINGLE_CYCLE = "UnramifiedSingleCycle"
INFINITELY_RAMIFIED = "InfinitelyRamified"


def _poly_mod(a: List[int], m: List[int], p: int) -> List[int]:
    a = a[:]
    dm = len(m) - 1
    inv = pow(m[-1], -1, p)
    while len(a) - 1 >= dm and any(a):
        if a[-1] == 0:
            a.pop()
            continue
        shift = len(a) - 1 - dm
        f = a[-1] * inv % p
        for i, mi in enumerate(m):
            a[shift + i] = (a[shift + i] - f * mi) % p
        a.pop()
    return a


def _is_irreducible(m: List[int], p: int) -> bool:
    d = len(m) - 1
    for k in range(1, d // 2 + 1):
        for tail in product(range(p), repeat=k):
            divisor = list(tail) + [1]
            r = _poly_mod(m, divisor, p)
            if not any(r):
                return False
    return True


class FiniteField:
    """F_{p^d} in a polynomial basis; the modulus is the first monic
    irreducible of degree d in lexicographic order of its coefficients."""

    def __init__(self, p: int, d: int = 1):
        if not is_prime(p):
            raise ValueError(f"{p} is not prime")
        if not 1 <= d <= 4:
            raise ValueError("only extension degrees 1..4 are supported")
        self.p, self.d, self.q = p, d, p ** d
        if d == 1:
            self.modulus = [0, 1]
        else:
            for tail in product(range(p), repeat=d):
                cand = list(tail) + [1]
                if cand[0] and _is_irreducible(cand, p):
                    self.modulus = cand
                    break

    def __repr__(self) -> str:
        return f"FiniteField({self.p}, {self.d})"

    def __eq__(self, other) -> bool:
        return isinstance(other, FiniteField) and (self.p, self.d) == (other.p, other.d)

    def __hash__(self):
        return hash((self.p, self.d))

    def elements(self) -> range:
        return range(self.q)

    def vec(self, x: int) -> List[int]:
        out = []
        for _ in range(self.d):
            x, r = divmod(x, self.p)
            out.append(r)
        return out

    def from_vec(self, v: Sequence[int]) -> int:
        x = 0
        for c in reversed(list(v)):
            x = x * self.p + c % self.p
        return x

    def from_int(self, n: int) -> int:
        return n % self.p

    def add(self, x: int, y: int) -> int:
        return self.from_vec([a + b for a, b in zip(self.vec(x), self.vec(y))])

    def sub(self, x: int, y: int) -> int:
        return self.from_vec([a - b for a, b in zip(self.vec(x), self.vec(y))])

    def mul(self, x: int, y: int) -> int:
        if self.d == 1:
            return x * y % self.p
        a, b = self.vec(x), self.vec(y)
        prod = [0] * (2 * self.d - 1)
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    prod[i + j] = (prod[i + j] + ai * bj) % self.p
        r = _poly_mod(prod, self.modulus, self.p)
        return self.from_vec(r + [0] * (self.d - len(r)))

    def pow(self, x: int, n: int) -> int:
        result, base = 1, x
        while n:
            if n & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            n >>= 1
        return result


@dataclass(frozen=True)
class ResidueReport:
    q: int
    ell: int
    orbit_of_zero: Tuple[int, ...]
    tail_length: int
    cycle_length: int
    a_bar: int
    a_in_forward_orbit_of_zero: bool
    zero_strictly_preperiodic: bool
    zero_and_a_in_single_cycle_mod_m: bool
    exact_single_cycle: Optional[bool] = None
    field: Optional[FiniteField] = None

    @property
    def cycle(self) -> Tuple[int, ...]:
        return self.orbit_of_zero[self.tail_length:]

    def with_exact(self, exact: bool) -> "ResidueReport":
        return ResidueReport(**{**self.__dict__, "exact_single_cycle": exact})

    def to_json(self) -> dict:
        F = self.field or FiniteField(_prime_of(self.q), _deg_of(self.q))
        return {
            "q": self.q,
            "ell": self.ell,
            "orbit_of_zero": [F.vec(x) for x in self.orbit_of_zero],
            "tail_length": self.tail_length,
            "cycle_length": self.cycle_length,
            "a_bar": F.vec(self.a_bar),
            "a_in_forward_orbit_of_zero": self.a_in_forward_orbit_of_zero,
            "zero_strictly_preperiodic": self.zero_strictly_preperiodic,
            "zero_and_a_in_single_cycle_mod_m": self.zero_and_a_in_single_cycle_mod_m,
            "exact_single_cycle": self.exact_single_cycle,
        }


def _prime_of(q: int) -> int:
    p = 2
    while q % p:
        p += 1
    return p


def _deg_of(q: int) -> int:
    p, d = _prime_of(q), 0
    while q > 1:
        q //= p
        d += 1
    return d


def orbit_analysis(ell: int, c_bar: int, a_bar: int, F: FiniteField) -> ResidueReport:
    """Forward orbit of 0 under x -> x^ell - c_bar over F."""
    if gcd(ell, F.p) != 1:
        raise ValueError("residue analysis is for the tame case (p must not divide ell)")
    seen = {}
    orbit: List[int] = []
    x = 0
    while x not in seen:
        seen[x] = len(orbit)
        orbit.append(x)
        x = F.sub(F.pow(x, ell), c_bar)
    tail = seen[x]
    cycle_len = len(orbit) - tail
    in_orbit = a_bar in seen
    single = tail == 0 and in_orbit
    return ResidueReport(F.q, ell, tuple(orbit), tail, cycle_len, a_bar, in_orbit,
                         tail >= 1, single, None, F)


def tame_verdict(report: ResidueReport, exact: Optional[bool] = None) -> str:
    if not report.a_in_forward_orbit_of_zero:
        return UNRAMIFIED_CASE
    if report.zero_strictly_preperiodic:
        return INDEX_DIVIDES_L
    if exact is None:
        exact = report.exact_single_cycle
    if exact is None:
        raise ValueError("exact single-cycle information required")
    return UNRAMIFIED_SINGLE_CYCLE if exact else INFINITELY_RAMIFIED


def reduce_mod_p(x, p: int) -> int:
    x = as_rat(x)
    if x != 0 and padic_val(x, p) < 0:
        raise ValueError(f"{x} is not {p}-integral")
    return x.numerator * pow(x.denominator, -1, p) % p


def exact_cycle_check(ell: int, c, a, p: int, report: ResidueReport) -> bool:
    """Whether 0 and a lie in a single cycle of f over Q.

    By Hensel uniqueness it suffices to test f^m(0) = 0 with m the period of
    0 mod p, then look for a among f^i(0), 0 <= i < m.
    """
    c, a = as_rat(c), as_rat(a)
    if not report.zero_and_a_in_single_cycle_mod_m:
        raise ValueError("0 and a are not in a single cycle mod p")
    for x in (c, a):
        if x != 0 and padic_val(x, p) < 0:
            raise ValueError(f"{x} is not {p}-integral")
    m = report.cycle_length
    x = Fraction(0)
    visited = []
    for _ in range(m):
        visited.append(x)
        x = x ** ell - c
    if x != 0:
        return False
    return a in visited


def residue_report(ell: int, c, a, p: int, exact: bool = True) -> ResidueReport:
    """Residue report for p-integral rationals c, a over F_p, with the exact
    single-cycle flag filled in when that branch is reached."""
    F = FiniteField(p)
    rep = orbit_analysis(ell, reduce_mod_p(c, p), reduce_mod_p(a, p), F)
    if exact and rep.zero_and_a_in_single_cycle_mod_m:
        rep = rep.with_exact(exact_cycle_check(ell, c, a, p, rep))
    return rep
