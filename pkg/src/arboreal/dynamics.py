"""Valuation propagation through the preimage tree of z^ell - c.

Everything here works on valuations only; no roots are ever computed.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import List, NamedTuple, Optional, Union

from .newton import ValMultiset
from .valcore import INF, GroundField, ValExt, fmt_val, is_infinite, nu_threshold

__all__ = [
    "ALL_EQUAL",
    "ONE_CLOSE_REST",
    "UNRAMIFIED_BOUNDARY",
    "Bound",
    "ClassPartitionPrediction",
    "DiffSplit",
    "Indeterminate",
    "ValOrbitReport",
    "additive_switch_index",
    "class_partition_prediction",
    "cutoff_level",
    "difference_split",
    "dn_sequence",
    "preimage_valuations",
    "q_sequence",
    "val_orbit",
]

ALL_EQUAL = "AllEqual"
ONE_CLOSE_REST = "OneCloseRest"
UNRAMIFIED_BOUNDARY = "UnramifiedBoundary"


class Bound(NamedTuple):
    """A valuation that is either known exactly or only bounded below."""

    value: ValExt
    exact: bool

    def to_json(self):
        s = fmt_val(self.value)
        return s if self.exact else ">=" + s


@dataclass(frozen=True)
class DiffSplit:
    """Valuations of x - y over the ell solutions x of f(x) - f(y) = d."""

    case: str
    far_val: ValExt
    close_val: Optional[ValExt] = None
    ground_field_member: bool = False
    ell: int = 2

    def valuations(self) -> ValMultiset:
        if self.case == ONE_CLOSE_REST:
            counts = {self.close_val: 1}
            counts[self.far_val] = counts.get(self.far_val, 0) + self.ell - 1
            return ValMultiset(counts, frozenset([self.close_val]))
        return ValMultiset({self.far_val: self.ell})

    def to_json(self) -> dict:
        out = {"case": self.case, "far_val": fmt_val(self.far_val),
               "ground_field_member": self.ground_field_member}
        if self.close_val is not None:
            out["close_val"] = fmt_val(self.close_val)
        return out


def difference_split(vd: ValExt, vy: ValExt, gf: GroundField) -> DiffSplit:
    """Classify the solutions x of f(x) - f(y) = d by v(x - y)."""
    if is_infinite(vy):
        raise ValueError("v(y) must be finite")
    ell = gf.ell
    boundary = ell * vy - nu_threshold(INF, gf)
    if vd > boundary:
        close = vd - (ell - 1) * vy - gf.v_ell
        far = vy + gf.v_ell / (ell - 1)
        return DiffSplit(ONE_CLOSE_REST, far, close, True, ell)
    case = UNRAMIFIED_BOUNDARY if (vd == boundary and gf.is_wild) else ALL_EQUAL
    return DiffSplit(case, vd / ell, None, False, ell)


class Indeterminate(NamedTuple):
    """Valuation only known to be at least ``lower``."""

    lower: Fraction


def preimage_valuations(v_alpha: ValExt, vc: Fraction, gf: GroundField
                        ) -> Union[ValMultiset, Indeterminate]:
    ell = gf.ell
    if v_alpha < vc:
        return ValMultiset({v_alpha / ell: ell})
    if v_alpha > vc:
        return ValMultiset({vc / ell: ell})
    return Indeterminate(vc / ell)


@dataclass(frozen=True)
class ValOrbitReport:
    """Per-level valuation of preimages (levels 1..depth).

    ``stabilization_level`` is the first level from which every entry is
    exactly v(c)/ell, or None if that does not happen within ``depth``.
    ``indeterminate_at`` is the first level whose value is only a bound.
    """

    levels: List[Bound]
    stabilization_level: Optional[int]
    indeterminate_at: Optional[int]

    @property
    def indeterminate(self) -> bool:
        return self.indeterminate_at is not None

    def to_json(self) -> dict:
        return {
            "levels": [b.to_json() for b in self.levels],
            "stabilization_level": self.stabilization_level,
            "indeterminate_at": self.indeterminate_at,
        }


def val_orbit(va: ValExt, vc: Fraction, gf: GroundField, depth: int) -> ValOrbitReport:
    ell = gf.ell
    target = vc / ell
    levels: List[Bound] = []
    cur = Bound(va, True)
    first_bad = None
    for level in range(1, depth + 1):
        if cur.exact:
            nxt = preimage_valuations(cur.value, vc, gf)
            if isinstance(nxt, Indeterminate):
                cur = Bound(nxt.lower, False)
                if first_bad is None:
                    first_bad = level
            else:
                cur = Bound(nxt.values()[0], True)
        elif cur.value > vc:
            # v(alpha) >= L > v(c) forces v(alpha + c) = v(c)
            cur = Bound(target, True)
        else:
            cur = Bound(min(cur.value, vc) / ell, False)
        levels.append(cur)
    stab = None
    for i in range(len(levels), 0, -1):
        b = levels[i - 1]
        if b.exact and b.value == target:
            stab = i
        else:
            break
    return ValOrbitReport(levels, stab, first_bad)


def cutoff_level(vc: Fraction, gf: GroundField):
    """Level n with K_inf = K_n when v(a) >= v(c)/ell.

    Returns ``(n, unramified_top)``; ``unramified_top`` marks the boundary
    v(c) = nu_m, where n = m + 1 and K_n / K_{n-1} is unramified.
    """
    nu_inf = nu_threshold(INF, gf)
    if not vc < nu_inf:
        raise ValueError("no cutoff unless v(c) < nu_inf")
    if not gf.is_wild:
        return 1, False
    n = 1
    while True:
        nu = nu_threshold(n, gf)
        if vc < nu:
            return n, False
        if vc == nu:
            return n + 1, True
        n += 1


def q_sequence(vc: Fraction, va: ValExt, gf: GroundField, n_max: int) -> List[Bound]:
    """q_m = v(alpha_m - alpha_{m-1}) along a chain of closest preimages."""
    ell = gf.ell
    nu_inf = nu_threshold(INF, gf)
    if not vc < nu_inf:
        raise ValueError("q-recursion needs v(c) < nu_inf")
    if va < vc / ell:
        raise ValueError("q-recursion needs v(a) >= v(c)/ell")
    threshold = vc - nu_inf
    shift = (ell - 1) * vc / ell + gf.v_ell
    out = [Bound(vc / ell, va > vc / ell)]
    while len(out) < n_max:
        q, exact = out[-1]
        # the step map is continuous and increasing, so bounds pass through it
        nxt = q / ell if q <= threshold else q - shift
        out.append(Bound(nxt, exact))
    return out[:n_max]


def additive_switch_index(vc: Fraction, va: ValExt, gf: GroundField,
                          n_max: int = 64) -> Optional[int]:
    """First m whose q_m lies strictly above v(c) - nu_inf.

    From that m on the recursion stays in its additive branch.
    """
    threshold = vc - nu_threshold(INF, gf)
    for m, (q, _) in enumerate(q_sequence(vc, va, gf, n_max), start=1):
        if q > threshold:
            return m
    return None


def dn_sequence(vc: Fraction, va: Optional[ValExt], gf: GroundField,
                n_max: int) -> List[Fraction]:
    """v(d_n) for two preimage chains that split at level 1 (wild case).

    ``va=None`` means the preimage valuations are taken as already
    stabilized at v(c)/p.
    """
    if not gf.is_wild:
        raise ValueError("d_n recursion is for the wild case")
    p = gf.p
    nu_inf = nu_threshold(INF, gf)
    unit = Fraction(1, p - 1)
    if nu_inf < vc < 0:
        if va is not None and not va > vc:
            raise ValueError("need v(a) > v(c) so that preimages sit at v(c)/p")
        d1 = vc / p + unit
    elif vc > 0 and va == 0:
        d1 = unit
    elif va is not None and not is_infinite(va) and va == vc and vc >= 0:
        d1 = vc + unit
    else:
        raise ValueError("parameters outside the d_n regimes")
    return [d1 / p ** (n - 1) for n in range(1, n_max + 1)]


@dataclass(frozen=True)
class ClassPartitionPrediction:
    level: int
    delta: Fraction
    class_count: int
    class_size: int
    cross_pairs: int
    within_pairs: int

    @property
    def cross_pair_val(self) -> Fraction:
        return self.delta

    @property
    def within_pair_val_bound(self) -> Fraction:
        return self.delta

    def to_json(self) -> dict:
        return {
            "level": self.level,
            "delta": fmt_val(self.delta),
            "class_count": self.class_count,
            "class_size": self.class_size,
            "cross_pairs": self.cross_pairs,
            "within_pairs": self.within_pairs,
        }


def class_partition_prediction(vc: Fraction, gf: GroundField, n: int
                               ) -> ClassPartitionPrediction:
    """Ordered-pair counts for differences of level-n preimages.

    Assumes v(a) > v(c).  Pairs in distinct classes have valuation exactly
    delta, pairs in the same class lie strictly above it.
    """
    if not vc < nu_threshold(INF, gf):
        raise ValueError("class partition needs v(c) < nu_inf")
    if n < 1:
        raise ValueError("level must be positive")
    ell = gf.ell
    delta = vc / ell + gf.v_ell / (ell - 1)
    size = ell ** (n - 1)
    within = ell * size * (size - 1)
    total = ell ** n * (ell ** n - 1)
    return ClassPartitionPrediction(n, delta, ell, size, total - within, within)
