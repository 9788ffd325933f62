"""Structural verdicts for the tower K_n = K(f^{-n}(a)), f(z) = z^ell - c.

Group structure is reported as tags carrying the hypotheses that justify
them; no field or group is ever constructed.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Optional, Tuple

from .dynamics import cutoff_level, val_orbit
from .valcore import (INF, GroundField, ValExt, as_rat, fmt_val,
                      nu_threshold, padic_val)

__all__ = [
    "DegreeBound",
    "FixedPointData",
    "RegimeVerdict",
    "Tag",
    "classify_real",
    "classify_tame",
    "classify_wild",
    "degree_growth_bound",
    "is_one_plus_eps_pth_power",
    "kummer_product_reduction",
    "max_p_power_index",
    "shallow_ramification_bound",
]

BELOW = "BelowNuInfty"
AT = "AtNuInfty"
BETWEEN = "Between"
NONNEG = "NonNegative"
TAME_NEG = "TameNegative"
TAME_NONNEG = "TameNonNegative"
REAL = "Real"

UNRAMIFIED = "unramified"
INDEX_DIVIDES_ELL = "index_divides_ell"
FINITELY = "finitely_ramified"
INFINITELY = "infinitely_ramified"
INFINITELY_WILD = "infinitely_wildly_ramified"


@dataclass(frozen=True)
class Tag:
    name: str
    params: Tuple[Tuple[str, object], ...] = ()
    hypotheses: Tuple[str, ...] = ()

    def param(self, key, default=None):
        return dict(self.params).get(key, default)

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "params": {k: (fmt_val(v) if isinstance(v, Fraction) else v)
                       for k, v in self.params},
            "hypotheses": list(self.hypotheses),
        }


def _tag(name, hyps, **params) -> Tag:
    return Tag(name, tuple(sorted(params.items())), tuple(hyps))


@dataclass
class RegimeVerdict:
    regime: str
    extension_finite: Optional[bool]
    ramification: Optional[str]
    cutoff: Optional[Tuple[int, bool]] = None
    tags: List[Tag] = field(default_factory=list)
    shallow_w: Optional[Fraction] = None
    degree_exponent: Optional[Fraction] = None
    hypotheses: List[str] = field(default_factory=list)

    def tag_names(self) -> List[str]:
        return [t.name for t in self.tags]

    def get_tag(self, name: str) -> Optional[Tag]:
        for t in self.tags:
            if t.name == name:
                return t
        return None

    def to_json(self) -> dict:
        return {
            "regime": self.regime,
            "finite": self.extension_finite,
            "cutoff": (None if self.cutoff is None else
                       {"n": self.cutoff[0], "unramified_top": self.cutoff[1]}),
            "tags": [t.to_json() for t in self.tags],
            "ramification": self.ramification,
            "shallow_w": None if self.shallow_w is None else fmt_val(self.shallow_w),
            "degree_exponent": (None if self.degree_exponent is None
                                else fmt_val(self.degree_exponent)),
            "hypotheses": list(self.hypotheses),
        }


@dataclass(frozen=True)
class FixedPointData:
    """Valuation data of a fixed point b of f, used when v(c) = nu_inf."""

    v_b: Fraction
    v_a_minus_b: Optional[ValExt]
    b_in_K: bool


def max_p_power_index(vc: Fraction, gf: GroundField) -> int:
    """Largest r with v(c) in p^r v(K^x), where v(K^x) = (1/e)Z."""
    if not gf.in_value_group(vc):
        raise ValueError(f"v(c) = {vc} is not in (1/{gf.e})Z")
    scaled = vc * gf.e
    if scaled == 0:
        raise ValueError("v(c) = 0 has no maximal r")
    return int(padic_val(scaled, gf.p))


def _cutoff_with_shift(vc, va, gf, hyps) -> Optional[Tuple[int, bool]]:
    ell = gf.ell
    n, top = cutoff_level(vc, gf)
    if va >= vc / ell:
        hyps.append("v(a) >= v(c)/ell")
        return n, top
    # move up to a level where every preimage has valuation v(c)/ell
    report = val_orbit(va, vc, gf, depth=64)
    m = report.stabilization_level
    if m is None:
        return None
    hyps.append(f"preimages stabilize at level {m}; cutoff shifted by {m}")
    return m + n, top


def classify_wild(gf: GroundField, vc, va, r: Optional[int] = None,
                  fp: Optional[FixedPointData] = None,
                  inertia: bool = True) -> RegimeVerdict:
    if not gf.is_wild:
        raise ValueError("classify_wild needs a wild ground field")
    vc = as_rat(vc)
    ell = gf.p
    nu_inf = nu_threshold(INF, gf)
    mu = gf.mu_ell_in_K
    base = ["wild: ell = p", f"v(c) = {fmt_val(vc)}", f"v(a) = {fmt_val(va)}"]

    if vc < nu_inf:
        hyps = base + ["v(c) < nu_inf"]
        v = RegimeVerdict(BELOW, True, FINITELY, hypotheses=hyps)
        v.cutoff = _cutoff_with_shift(vc, va, gf, hyps)
        if va > vc and mu:
            h = ("v(c) < nu_inf", "v(a) > v(c)", "mu_p in K")
            v.tags.append(_tag("ElemAbelianExp", h, ell=ell, rank_le="n"))
            v.tags.append(_tag("CyclicQuotient", h, order_divides=ell))
            v.tags.append(_tag("GeneratedByOneRoot", h))
        n, top = cutoff_level(vc, gf)
        if mu and not top and va > vc / ell:
            r_calc = max_p_power_index(vc, gf)
            if r is not None and r != r_calc:
                raise ValueError(f"r = {r} disagrees with v(c); expected {r_calc}")
            r = r_calc
            h = (f"nu_{n - 1} < v(c) < nu_{n}", "v(a) > v(c)/ell", "mu_p in K",
                 f"r = {r}")
            v.tags.append(_tag("InertiaLower", h, n=n, lower=ell ** max(n - r, 0),
                               upper=ell ** n))
            if r == 0:
                v.tags.append(_tag("G=I=(Z/lZ)^n", h, n=n, order=ell ** n))
        elif mu and top and va >= vc / ell:
            m = n - 1
            h = (f"v(c) = nu_{m}", "v(a) >= v(c)/ell", "mu_p in K")
            v.tags.append(_tag("Ginf=G(n+1)<=(Z/lZ)^(n+1)", h, n=m))
            v.tags.append(_tag("Iinf=I(n)<=(Z/lZ)^n", h, n=m))
            v.tags.append(_tag("CyclicQuotient", h, order_divides=ell))
        return v

    if vc == nu_inf:
        hyps = base + ["v(c) = nu_inf"]
        finite = False if gf.k_finite else None
        if gf.k_finite:
            hyps.append("k finite: [K_inf:K] infinite")
        v = RegimeVerdict(AT, finite, None, hypotheses=hyps)
        v.tags.append(_tag("Inertia_p_group", ("v(c) = nu_inf",)))
        if mu:
            v.tags.append(_tag("GmodI_cyclic_p_group", ("v(c) = nu_inf", "mu_p in K")))
            v.tags.append(_tag("GmodI=Z_p", ("v(c) = nu_inf", "mu_p in K")))
        if va > vc:
            v.tags.append(_tag("InertiaElemAbelian", ("v(c) = nu_inf", "v(a) > v(c)"),
                               order_divides="p^n"))
        v.tags.append(_tag("UpperRamificationEventuallyTrivial", ("v(c) = nu_inf",)))
        if fp is None or fp.v_a_minus_b is None:
            if inertia:
                raise ValueError("fixed-point data (v(a-b), b in K) required "
                                 "for the inertia verdict at v(c) = nu_inf")
            return v
        vab = fp.v_a_minus_b
        hyps.append(f"v(a-b) = {fmt_val(vab)}")
        if vab < 0:
            v.ramification = INFINITELY_WILD
            v.tags.append(_tag("Iinf_infinite_pro_p", ("v(c) = nu_inf", "v(a-b) < 0")))
            if va > vc:
                v.tags.append(_tag("Iinf=(Z/pZ)^inf",
                                   ("v(c) = nu_inf", "v(a-b) < 0", "v(a) > v(c)")))
        else:
            if fp.b_in_K:
                v.ramification = UNRAMIFIED
                v.tags.append(_tag("Iinf_trivial", ("v(c) = nu_inf", "v(a-b) >= 0",
                                                    "b in K")))
            else:
                v.ramification = FINITELY
                v.tags.append(_tag("Iinf_finite", ("v(c) = nu_inf", "v(a-b) >= 0")))
        if va > vc and fp.b_in_K:
            v.shallow_w = shallow_ramification_bound(gf.e, vab)
        return v

    if vc < 0:
        hyps = base + ["nu_inf < v(c) < 0"]
        v = RegimeVerdict(BETWEEN, False, INFINITELY_WILD, hypotheses=hyps)
        v.degree_exponent = degree_growth_bound(gf, vc, 1).exponent
        return v

    hyps = base + ["v(c) >= 0"]
    return RegimeVerdict(NONNEG, False, INFINITELY_WILD, hypotheses=hyps)


def classify_tame(gf: GroundField, vc, va, residue=None,
                  exact: Optional[bool] = None) -> RegimeVerdict:
    """Tame-case verdict.  ``residue`` is a :class:`~arboreal.residue.ResidueReport`."""
    from .residue import (INDEX_DIVIDES_L, INFINITELY_RAMIFIED, UNRAMIFIED_CASE,
                          UNRAMIFIED_SINGLE_CYCLE, tame_verdict)

    if gf.is_wild:
        raise ValueError("classify_tame needs a tame ground field")
    vc = as_rat(vc)
    ell = gf.ell
    base = ["tame: p does not divide ell", f"v(c) = {fmt_val(vc)}",
            f"v(a) = {fmt_val(va)}"]
    if vc < 0:
        hyps = base + ["v(c) < 0"]
        v = RegimeVerdict(TAME_NEG, True, FINITELY, hypotheses=hyps)
        v.cutoff = _cutoff_with_shift(vc, va, gf, hyps)
        if va > vc and gf.mu_ell_in_K:
            h = ("v(c) < 0", "v(a) > v(c)", "mu_ell in K")
            v.tags.append(_tag("ElemAbelianExp", h, ell=ell, rank_le="n"))
            v.tags.append(_tag("CyclicQuotient", h, order_divides=ell))
            v.tags.append(_tag("GeneratedByOneRoot", h))
        return v

    hyps = base + ["v(c) >= 0"]
    v = RegimeVerdict(TAME_NONNEG, None, None, hypotheses=hyps)
    lo = min(va, vc)
    if lo != 0 and va != vc:
        v.ramification = INFINITELY
        hyps.append("min(v(a), v(c)) != 0 and v(a) != v(c)")
        return v
    if residue is None:
        raise ValueError("residue report required when v(c) >= 0 and v(a) >= 0")
    case = tame_verdict(residue, exact)
    hyps.append(f"residue case {case}")
    v.ramification = {
        UNRAMIFIED_CASE: UNRAMIFIED,
        INDEX_DIVIDES_L: INDEX_DIVIDES_ELL,
        UNRAMIFIED_SINGLE_CYCLE: UNRAMIFIED,
        INFINITELY_RAMIFIED: INFINITELY,
    }[case]
    v.tags.append(_tag("ResidueCase", tuple(hyps[-1:]), case=case))
    return v


@dataclass(frozen=True)
class PerStepBound:
    lower_level: int
    log_p_bound: int

    def to_json(self) -> dict:
        return {"from": self.lower_level, "to": self.lower_level + 1,
                "log_p_bound": self.log_p_bound}


@dataclass(frozen=True)
class DegreeBound:
    """Degree growth data: [K_n:K] <= C * B_n^exponent for a constant C."""

    p: int
    n: int
    r: int
    exponent: Fraction
    per_step: Tuple[PerStepBound, ...]

    @property
    def b_n_log_p(self) -> int:
        return sum(self.p ** m for m in range(1, self.n + 1))

    @property
    def b_n(self) -> int:
        return (self.p - 1) * self.p ** self.b_n_log_p

    def to_json(self) -> dict:
        return {
            "p": self.p,
            "n": self.n,
            "r": self.r,
            "exponent": fmt_val(self.exponent),
            "b_n": {"unit": self.p - 1, "log_p": self.b_n_log_p},
            "per_step": [s.to_json() for s in self.per_step],
        }


def degree_growth_bound(gf: GroundField, vc, n: int, va: ValExt = None) -> DegreeBound:
    """Smallest admissible r and the per-step Kummer bounds up to level n.

    ``va=None`` takes the preimage valuations as stabilized from level 1.
    """
    if not gf.is_wild:
        raise ValueError("degree bound is for the wild case")
    vc = as_rat(vc)
    if vc >= 0:
        raise ValueError("no admissible r when v(c) >= 0")
    p = gf.p
    r = 1
    while not vc < Fraction(-p, (p ** r - 1) * (p - 1)):
        r += 1
    m0 = 1
    if va is not None:
        report = val_orbit(va, vc, gf, depth=max(n, 1) + 64)
        for level, b in enumerate(report.levels, start=1):
            if b.value < vc:
                m0 = level + 1
    steps = tuple(PerStepBound(m + r, p ** m * (p ** r - 1))
                  for m in range(m0, n - r))
    return DegreeBound(p, n, r, 1 - Fraction(1, p ** r), steps)


def is_one_plus_eps_pth_power(v_eps: ValExt, gf: GroundField) -> bool:
    """Sufficient test that 1 + eps is a p-th power in K."""
    if not gf.is_wild:
        raise ValueError("wild case only")
    return v_eps > Fraction(gf.p, gf.p - 1)


def kummer_product_reduction(vc, v_alpha_m: ValExt, r: int, gf: GroundField) -> bool:
    """Whether the product of (alpha_{m+r} + c) over f^{-r}(alpha_m) is forced
    to be a p-th power in K_{m+r}."""
    if not gf.is_wild:
        raise ValueError("wild case only")
    vc = as_rat(vc)
    if not vc < 0:
        raise ValueError("needs v(c) < 0")
    lower = min(vc, v_alpha_m)
    return lower - gf.p ** r * vc > Fraction(gf.p, gf.p - 1)


def shallow_ramification_bound(e: int, v_a_minus_b: Optional[ValExt]) -> Fraction:
    """Depth w* with G(inf)^w trivial for every w >= w*."""
    if v_a_minus_b is None:
        raise ValueError("v(a - b) unknown")
    if v_a_minus_b >= 0:
        return Fraction(0)
    return 2 * e * abs(Fraction(v_a_minus_b))


ALL_REAL = "AllReal"
COMPLEX = "Complex"


def classify_real(k: int, c, a) -> str:
    """K_inf over R for z^k - c: ``"AllReal"`` or ``"Complex"``."""
    c, a = as_rat(c), as_rat(a)
    if c == 0:
        raise ValueError("c must be nonzero")
    if k < 2:
        raise ValueError("k must be at least 2")
    if k > 2 or c < 2:
        return COMPLEX
    return ALL_REAL if -c <= a <= c * c - c else COMPLEX
