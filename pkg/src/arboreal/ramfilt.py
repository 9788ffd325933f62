"""Ramification filtrations as order functions, with Herbrand phi and psi.

A filtration is a list of breaks ``(u_i, n_i)`` with ``u_0 = 0``: the group
G_t has order ``n_0`` for ``0 <= t <= u_1`` and order ``n_i`` for
``u_i < t <= u_{i+1}``; the last order holds for all larger t.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, List, NamedTuple, Optional, Sequence, Tuple

from .valcore import as_rat, fmt_val

__all__ = [
    "BreakFiltration",
    "PhiCheck",
    "compositum_upper_bound",
    "herbrand_phi",
    "herbrand_psi",
    "lower_from_upper",
    "phi_leq_identity_check",
    "subgroup_phi_inequality",
    "upper_order_function",
]


@dataclass(frozen=True)
class BreakFiltration:
    breaks: Tuple[Tuple[Fraction, int], ...]

    def __post_init__(self):
        br = tuple((as_rat(u), int(n)) for u, n in self.breaks)
        object.__setattr__(self, "breaks", br)
        if not br:
            raise ValueError("filtration needs at least one break")
        if br[0][0] != 0:
            raise ValueError("first break must sit at u = 0")
        for (u0, n0), (u1, n1) in zip(br, br[1:]):
            if not u1 > u0:
                raise ValueError("break points must strictly increase")
            if n0 % n1 or n1 > n0:
                raise ValueError("orders must form a divisibility chain")
        if any(n < 1 for _, n in br):
            raise ValueError("orders must be positive")

    @classmethod
    def of(cls, pairs: Iterable[Sequence]) -> "BreakFiltration":
        return cls(tuple((as_rat(u), int(n)) for u, n in pairs))

    @property
    def inertia_order(self) -> int:
        return self.breaks[0][1]

    @property
    def terminal_order(self) -> int:
        return self.breaks[-1][1]

    def order_at(self, t) -> int:
        t = as_rat(t)
        if t < 0:
            raise ValueError("t must be nonnegative")
        order = self.breaks[0][1]
        for u, n in self.breaks[1:]:
            if t > u:
                order = n
            else:
                break
        return order

    def index_at(self, t) -> int:
        return self.inertia_order // self.order_at(t)

    def points(self) -> List[Fraction]:
        return [u for u, _ in self.breaks]

    def to_json(self) -> list:
        return [[fmt_val(u), n] for u, n in self.breaks]


def herbrand_phi(F: BreakFiltration, u) -> Fraction:
    """phi(u) = integral from 0 to u of dt / (G_0 : G_t)."""
    u = as_rat(u)
    if u < 0:
        raise ValueError("u must be nonnegative")
    g0 = F.inertia_order
    total = Fraction(0)
    bounds = F.points()[1:] + [None]
    for (start, order), end in zip(F.breaks, bounds):
        hi = u if end is None else min(u, end)
        if hi <= start:
            break
        total += (hi - start) * Fraction(order, g0)
    return total


def herbrand_psi(F: BreakFiltration, w) -> Fraction:
    """Inverse of :func:`herbrand_phi`."""
    w = as_rat(w)
    if w < 0:
        raise ValueError("w must be nonnegative")
    g0 = F.inertia_order
    acc = Fraction(0)
    bounds = F.points()[1:] + [None]
    for (start, order), end in zip(F.breaks, bounds):
        slope = Fraction(order, g0)
        if end is not None:
            piece = (end - start) * slope
            if w <= acc + piece:
                return start + (w - acc) / slope
            acc += piece
        else:
            return start + (w - acc) / slope
    raise AssertionError("unreachable")


def upper_order_function(F: BreakFiltration) -> BreakFiltration:
    """Upper-numbering filtration: a lower break at u moves to phi(u)."""
    return BreakFiltration(tuple((herbrand_phi(F, u), n) for u, n in F.breaks))


def lower_from_upper(U: BreakFiltration) -> BreakFiltration:
    """Inverse transport: the psi of an upper filtration is the integral of
    (G^0 : G^t), so upper breaks map back by that integral."""
    g0 = U.inertia_order
    out = []
    acc = Fraction(0)
    prev_w, prev_n = U.breaks[0]
    out.append((Fraction(0), prev_n))
    for w, n in U.breaks[1:]:
        acc += (w - prev_w) * Fraction(g0, prev_n)
        out.append((acc, n))
        prev_w, prev_n = w, n
    return BreakFiltration(tuple(out))


class PhiCheck(NamedTuple):
    holds: bool
    witness: Optional[Fraction]

    def __bool__(self) -> bool:
        return self.holds


def phi_leq_identity_check(F: BreakFiltration, u_samples) -> PhiCheck:
    """Check phi(u) <= u at every sample; report the first violation."""
    for u in u_samples:
        u = as_rat(u)
        if herbrand_phi(F, u) > u:
            return PhiCheck(False, u)
    return PhiCheck(True, None)


def _probe_points(*filtrations: BreakFiltration) -> List[Fraction]:
    pts = sorted({u for F in filtrations for u in F.points()})
    probes = list(pts)
    probes += [(a + b) / 2 for a, b in zip(pts, pts[1:])]
    probes.append(pts[-1] + 1)
    return sorted(set(probes))


def subgroup_phi_inequality(G_F: BreakFiltration, H_F: BreakFiltration) -> bool:
    """phi_H >= phi_G everywhere, for H_t = G_t intersected with H.

    Both functions are piecewise linear with kinks only at break points, so
    comparing at the union of break points and one point past the last
    settles it.
    """
    probes = _probe_points(G_F, H_F)
    for t in probes:
        g, h = G_F.order_at(t), H_F.order_at(t)
        if g % h:
            raise ValueError(f"H_t of order {h} cannot sit inside G_t of order {g} at t = {t}")
        if H_F.index_at(t) > G_F.index_at(t):
            raise ValueError(f"(H_0:H_t) exceeds (G_0:G_t) at t = {t}")
    return all(herbrand_phi(H_F, t) >= herbrand_phi(G_F, t) for t in probes)


def compositum_upper_bound(U1: BreakFiltration, U2: BreakFiltration) -> BreakFiltration:
    """Order bound for the upper filtration of a compositum.

    Gal(L1 L2 / K)^w embeds in the product of the Gal(L_i/K)^w, so its order
    divides the product of the two upper order functions; in particular it is
    trivial wherever both inputs are.
    """
    pts = sorted({u for U in (U1, U2) for u in U.points()})
    out = []
    for w in pts:
        # orders just after w are what hold on (w, next]; at w = 0 take G^0
        n = U1.order_at(w) * U2.order_at(w) if w == 0 else \
            _order_right_of(U1, w) * _order_right_of(U2, w)
        if out and out[-1][1] == n:
            continue
        out.append((w, n))
    # collapse into a valid chain: orders are products of chains, hence chains
    return BreakFiltration(tuple(out))


def _order_right_of(F: BreakFiltration, w: Fraction) -> int:
    order = F.breaks[0][1]
    for u, n in F.breaks[1:]:
        if w >= u:
            order = n
    return order
