"""Compare valuation predictions against brute-force root and difference
multisets of f^n(z) - a."""

from __future__ import annotations

import json
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, List, Optional

from ..dynamics import class_partition_prediction, dn_sequence, val_orbit
from ..newton import ValMultiset
from ..valcore import INF, GroundField, as_rat, fmt_val, nu_threshold, padic_val
from .polys import DEFAULT_DEGREE_CAP, iterate_poly, root_val_multiset
from .resultant import DEFAULT_RESULTANT_CAP, difference_val_multiset

__all__ = [
    "Cancelled",
    "IndeterminateRegime",
    "OracleReport",
    "load_corpus",
    "run_corpus",
    "verify_predictions",
]


class IndeterminateRegime(ValueError):
    """No valuation-level prediction exists for these parameters."""


class Cancelled(RuntimeError):
    pass


@dataclass
class OracleReport:
    level: int
    root_vals: ValMultiset
    diff_vals: Optional[ValMultiset]
    predicted: dict = field(default_factory=dict)
    agreement: bool = True
    witnesses: List[str] = field(default_factory=list)
    squarefree: bool = False

    def to_json(self) -> dict:
        return {
            "level": self.level,
            "root_vals": self.root_vals.to_json(),
            "diff_vals": None if self.diff_vals is None else self.diff_vals.to_json(),
            "predicted": self.predicted,
            "agreement": self.agreement,
            "witnesses": list(self.witnesses),
            "squarefree": self.squarefree,
        }


def _check(cancel):
    if cancel is not None and cancel.is_set():
        raise Cancelled("oracle run cancelled")


def verify_predictions(gf: GroundField, c, a, n: int, cancel=None,
                       degree_cap: int = DEFAULT_DEGREE_CAP,
                       resultant_cap: int = DEFAULT_RESULTANT_CAP) -> OracleReport:
    """Check root and difference valuations of level-n preimages of a.

    Which predictions apply depends on the regime of (v(c), v(a)); if none
    does, :class:`IndeterminateRegime` is raised.  ``cancel`` is any object
    with ``is_set()``; it is polled between levels and stages.
    """
    c, a = as_rat(c), as_rat(a)
    p, ell = gf.p, gf.ell
    if p == 0:
        raise ValueError("the oracle needs a residue characteristic p")
    if n < 1:
        raise ValueError("level must be positive")
    vc, va = padic_val(c, p), padic_val(a, p)
    nu_inf = nu_threshold(INF, gf)
    predicted: dict = {}
    witnesses: List[str] = []

    orbit = val_orbit(va, vc, gf, n)
    root_pred = orbit.levels[-1]

    diff_kind = None
    if vc < nu_inf and va > vc:
        diff_kind = "class_partition"
        cp = class_partition_prediction(vc, gf, n)
        predicted["class_partition"] = cp.to_json()
    elif gf.is_wild and vc == nu_inf and va > vc:
        diff_kind = "all_zero"
        predicted["all_differences"] = "0/1"
    elif gf.is_wild:
        try:
            dn = dn_sequence(vc, va, gf, n)
        except ValueError:
            dn = None
        if dn is not None:
            diff_kind = "contains_dn"
            predicted["d_n"] = [fmt_val(x) for x in dn]
    if not root_pred.exact and diff_kind is None:
        raise IndeterminateRegime("valuations do not determine this level")
    if root_pred.exact:
        predicted["root_vals"] = {fmt_val(root_pred.value): ell ** n}

    # with v(a) = v(c) >= 0 the d_n formula follows chains of preimages that
    # stay at v(c); valuations alone do not decide whether one exists
    need_chain = diff_kind == "contains_dn" and va == vc
    P = None
    for level in range(1, n + 1):
        _check(cancel)
        P = iterate_poly(ell, c, level, a, degree_cap)
        if need_chain:
            level_roots = root_val_multiset(P, p)
            if level_roots[vc] == 0:
                raise IndeterminateRegime(
                    f"no level-{level} preimage has valuation v(c) = {fmt_val(vc)}: "
                    f"{level_roots.to_json()}")
            if set(level_roots.values()) != {vc}:
                predicted["all_preimages_at_v(c)"] = False
    if need_chain:
        predicted.setdefault("all_preimages_at_v(c)", True)
    roots = root_val_multiset(P, p)
    if root_pred.exact and roots != {root_pred.value: ell ** n}:
        witnesses.append(f"root valuations {roots.to_json()} != predicted "
                         f"{predicted['root_vals']}")

    diffs = None
    squarefree = False
    if diff_kind is not None:
        _check(cancel)
        squarefree = not P.is_separable()
        if squarefree and diff_kind != "contains_dn":
            raise ValueError("f^n(z) - a is not separable")
        diffs = difference_val_multiset(P, p, resultant_cap, squarefree=squarefree)
        if diff_kind == "class_partition":
            delta = cp.delta
            above = diffs.count_where(lambda v: v > delta)
            at = diffs[delta]
            below = diffs.count_where(lambda v: v < delta)
            if (above, at, below) != (cp.within_pairs, cp.cross_pairs, 0):
                witnesses.append(f"class counts (above, at, below delta) = "
                                 f"{(above, at, below)}, predicted "
                                 f"{(cp.within_pairs, cp.cross_pairs, 0)}")
        elif diff_kind == "all_zero":
            if diffs != {Fraction(0): len(diffs)}:
                witnesses.append(f"differences {diffs.to_json()} not all 0")
        else:
            target = dn[-1]
            if diffs[target] == 0:
                witnesses.append(f"v(d_{n}) = {fmt_val(target)} missing from "
                                 f"{diffs.to_json()}")
    return OracleReport(n, roots, diffs, predicted, not witnesses, witnesses,
                        squarefree)


def _field_from_record(rec: dict) -> GroundField:
    mode = rec.get("mode", "wild")
    p = int(rec["p"])
    ell = int(rec.get("ell", p))
    if mode == "wild":
        return GroundField.wild(p, int(rec.get("e", 1)))
    return GroundField.tame(ell, p)


def load_corpus(lines: Iterable[str]) -> List[dict]:
    out = []
    for raw in lines:
        raw = raw.strip()
        if raw and not raw.startswith("#"):
            out.append(json.loads(raw))
    return out


def _run_record(rec: dict) -> dict:
    gf = _field_from_record(rec)
    try:
        rep = verify_predictions(gf, rec["c"], rec["a"], int(rec["n"]))
        got = rep.to_json()
    except IndeterminateRegime as exc:
        got = {"error": "indeterminate", "message": str(exc)}
    expected = rec.get("expected", {})
    mismatches = [k for k, v in expected.items() if got.get(k) != v]
    return {"instance": {k: rec[k] for k in sorted(rec) if k != "expected"},
            "passed": not mismatches, "mismatches": mismatches, "report": got}


def run_corpus(records: List[dict], jobs: int = 1) -> List[dict]:
    """Evaluate corpus records; ``jobs > 1`` fans out over processes."""
    if jobs <= 1:
        return [_run_record(r) for r in records]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(_run_record, records))
