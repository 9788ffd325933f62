"""Command-line front end; every subcommand prints one JSON document.

Exit codes: 0 success, 2 bad input or violated precondition, 3 a
computation cap was hit.
"""

from __future__ import annotations

import argparse
import json
import os
import re
import sys
from fractions import Fraction
from typing import List, Optional, Sequence

from . import __version__
from .classifier import (FixedPointData, classify_real, classify_tame, classify_wild,
                         degree_growth_bound)
from .dynamics import (additive_switch_index, cutoff_level, dn_sequence, q_sequence,
                       val_orbit)
from .oracle import (load_corpus, real_all_real_check, run_corpus,
                     verify_predictions)
from .oracle.harness import Cancelled, IndeterminateRegime
from .ramfilt import (BreakFiltration, herbrand_phi, herbrand_psi,
                      upper_order_function)
from .residue import residue_report
from .treeauto import TreeAut, sgn_vector, sign_preimage
from .valcore import (INF, GroundField, fmt_val, nu_threshold, padic_val, parse_rat,
                      parse_val)

ENV_DEGREE_CAP = "ARBOREAL_DEGREE_CAP"
ENV_RESULTANT_CAP = "ARBOREAL_RESULTANT_CAP"
ENV_PRECISION_CAP = "ARBOREAL_PRECISION_CAP"

EXIT_OK, EXIT_USAGE, EXIT_CAP = 0, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


_NEG_VALUE = re.compile(r"^-(\d+(/\d+)?|inf)$")
_SIGNS = re.compile(r"^[+-]+$")


def _glue_negative_values(argv: Sequence[str]) -> List[str]:
    # argparse would read "-5/1" or "-+" as an option; bind it to the preceding flag
    out: List[str] = []
    for tok in argv:
        if out and out[-1] == "--target" and _SIGNS.match(tok):
            out[-1] = f"{out[-1]}={tok}"
        elif out and out[-1].startswith("--") and "=" not in out[-1] and _NEG_VALUE.match(tok):
            out[-1] = f"{out[-1]}={tok}"
        elif out and out[-1] in ("-c", "-a") and _NEG_VALUE.match(tok):
            out[-1] = f"{out[-1]}{tok}"
        else:
            out.append(tok)
    return out


def _rat(s: str) -> Fraction:
    try:
        return parse_rat(s)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc))


def _val(s: str):
    try:
        return parse_val(s)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc))


def _field_args(p: argparse.ArgumentParser) -> None:
    mode = p.add_mutually_exclusive_group()
    mode.add_argument("--wild", action="store_true", help="ell = p over a p-adic field")
    mode.add_argument("--tame", action="store_true", help="p does not divide ell")
    p.add_argument("-p", type=int, help="residue characteristic")
    p.add_argument("-l", "--ell", type=int, help="degree ell (defaults to p when wild)")
    p.add_argument("-e", type=int, default=1, help="ramification index of K over Q_p")
    p.add_argument("--mu", choices=["yes", "no"], help="whether mu_ell lies in K")
    p.add_argument("--k-infinite", action="store_true",
                   help="residue field is infinite")


def _caps(p: argparse.ArgumentParser) -> None:
    p.add_argument("--degree-cap", type=int,
                   default=int(os.environ.get(ENV_DEGREE_CAP, 256)))
    p.add_argument("--resultant-cap", type=int,
                   default=int(os.environ.get(ENV_RESULTANT_CAP, 256)))


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="arboreal", description=__doc__)
    parser.add_argument("--version", action="version", version=__version__)
    parser.add_argument("--config", help="JSON file of flag values")
    parser.add_argument("-o", "--output", help="write JSON here instead of stdout")
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)

    p = sub.add_parser("classify", help="structural verdict for (v(c), v(a))")
    _field_args(p)
    p.add_argument("--vc", type=_rat, help="v(c)")
    p.add_argument("--va", type=_val, help="v(a), or inf for a = 0")
    p.add_argument("-c", type=_rat, help="exact c (valuations and residues derived)")
    p.add_argument("-a", type=_rat, help="exact a")
    p.add_argument("--r", type=int, help="largest r with v(c) in p^r v(K^x)")
    p.add_argument("--vab", type=_val, help="v(a - b) for a fixed point b of f")
    p.add_argument("--b-in-K", action="store_true", help="the fixed point b lies in K")
    p.add_argument("--degree-level", type=int, default=0,
                   help="also report the degree growth bound up to this level")

    p = sub.add_parser("real", help="K_inf over R for z^k - c")
    p.add_argument("-k", type=int, default=2)
    p.add_argument("-c", type=_rat, required=True)
    p.add_argument("-a", type=_rat, required=True)
    p.add_argument("--depth", type=int, default=0,
                   help="also run the interval check to this depth (k = 2)")
    p.add_argument("--precision-cap", type=int,
                   default=int(os.environ.get(ENV_PRECISION_CAP, 4096)))

    p = sub.add_parser("tree", help="valuation propagation down the preimage tree")
    _field_args(p)
    p.add_argument("--vc", type=_rat)
    p.add_argument("--va", type=_val)
    p.add_argument("-c", type=_rat)
    p.add_argument("-a", type=_rat)
    p.add_argument("--depth", type=int, default=6)

    p = sub.add_parser("oracle", help="brute-force check of valuation predictions")
    _field_args(p)
    p.add_argument("-c", type=_rat)
    p.add_argument("-a", type=_rat)
    p.add_argument("-n", type=int, default=2)
    p.add_argument("--corpus", help="JSON-lines regression corpus")
    p.add_argument("--jobs", type=int, default=1)
    _caps(p)

    p = sub.add_parser("filtration", help="Herbrand functions of a break filtration")
    p.add_argument("--breaks", required=True,
                   help="comma list u:order, e.g. 0:4,1:2,3:1")
    p.add_argument("--u", type=_rat, action="append", default=[],
                   help="evaluate phi at u (repeatable)")
    p.add_argument("--w", type=_rat, action="append", default=[],
                   help="evaluate psi at w (repeatable)")

    p = sub.add_parser("sgn", help="level signs of a tree automorphism")
    p.add_argument("-l", "--ell", type=int, default=2)
    p.add_argument("-n", type=int, help="tree height (for --labels)")
    p.add_argument("--target", help="sign string such as +-+ to realize")
    p.add_argument("--labels", help="JSON {vertex-word: permutation}")
    return parser


def _ground_field(ns) -> GroundField:
    if ns.p is None:
        raise UsageError("-p is required")
    mu = None if ns.mu is None else ns.mu == "yes"
    if ns.tame:
        if ns.ell is None:
            raise UsageError("--tame needs --ell")
        gf = GroundField.tame(ns.ell, ns.p, mu_ell_in_K=bool(mu),
                              k_finite=not ns.k_infinite)
        if mu is False:
            gf = GroundField("tame", gf.ell, gf.p, 1, False, gf.k_finite)
        return gf
    if ns.ell is not None and ns.ell != ns.p:
        raise UsageError("wild mode needs ell = p (use --tame otherwise)")
    return GroundField.wild(ns.p, ns.e, mu, k_finite=not ns.k_infinite)


def _valuations(ns, gf):
    vc, va = ns.vc, ns.va
    if ns.c is not None:
        if gf.p == 0:
            raise UsageError("exact c needs a prime p")
        vc = padic_val(ns.c, gf.p)
        if vc is INF:
            raise UsageError("c must be nonzero")
    if ns.a is not None:
        va = padic_val(ns.a, gf.p)
    if vc is None or va is None:
        raise UsageError("give --vc/--va or exact -c/-a")
    return vc, va


def _cmd_classify(ns) -> dict:
    gf = _ground_field(ns)
    vc, va = _valuations(ns, gf)
    if gf.is_wild:
        fp = None
        if vc == nu_threshold(INF, gf) and ns.vab is not None:
            fp = FixedPointData(vc / gf.p, ns.vab, ns.b_in_K)
        verdict = classify_wild(gf, vc, va, r=ns.r, fp=fp, inertia=fp is not None)
        out = {"field": gf.to_json(), "verdict": verdict.to_json()}
        if ns.degree_level and vc < 0:
            out["degree_bound"] = degree_growth_bound(gf, vc, ns.degree_level, va).to_json()
        return out
    residue = None
    if vc >= 0 and va >= 0 and ns.c is not None and ns.a is not None:
        residue = residue_report(gf.ell, ns.c, ns.a, gf.p)
    verdict = classify_tame(gf, vc, va, residue)
    out = {"field": gf.to_json(), "verdict": verdict.to_json()}
    if residue is not None:
        out["residue"] = residue.to_json()
    return out


def _cmd_real(ns) -> dict:
    out = {"k": ns.k, "c": fmt_val(ns.c), "a": fmt_val(ns.a),
           "verdict": classify_real(ns.k, ns.c, ns.a)}
    if ns.depth and ns.k == 2:
        out["check"] = real_all_real_check(2, ns.c, ns.a, ns.depth,
                                           ns.precision_cap).to_json()
    return out


def _cmd_tree(ns) -> dict:
    gf = _ground_field(ns)
    vc, va = _valuations(ns, gf)
    out = {"field": gf.to_json(), "v_c": fmt_val(vc), "v_a": fmt_val(va),
           "orbit": val_orbit(va, vc, gf, ns.depth).to_json()}
    nu_inf = nu_threshold(INF, gf)
    if vc < nu_inf:
        n, top = cutoff_level(vc, gf)
        out["cutoff"] = {"n": n, "unramified_top": top}
        if va >= vc / gf.ell:
            out["q_sequence"] = [b.to_json() for b in q_sequence(vc, va, gf, ns.depth)]
            out["additive_switch"] = additive_switch_index(vc, va, gf)
    if gf.is_wild:
        try:
            out["d_n"] = [fmt_val(x) for x in dn_sequence(vc, va, gf, ns.depth)]
        except ValueError:
            pass
    return out


def _cmd_oracle(ns) -> dict:
    if ns.corpus:
        with open(ns.corpus) as fh:
            records = load_corpus(fh)
        results = run_corpus(records, ns.jobs)
        return {"corpus": ns.corpus, "passed": all(r["passed"] for r in results),
                "results": results}
    gf = _ground_field(ns)
    if ns.c is None or ns.a is None:
        raise UsageError("oracle needs -c and -a (or --corpus)")
    rep = verify_predictions(gf, ns.c, ns.a, ns.n, degree_cap=ns.degree_cap,
                             resultant_cap=ns.resultant_cap)
    return {"field": gf.to_json(), "c": fmt_val(ns.c), "a": fmt_val(ns.a),
            **rep.to_json()}


def _parse_breaks(text: str) -> BreakFiltration:
    pairs = []
    for chunk in text.split(","):
        u, _, n = chunk.partition(":")
        if not n:
            raise UsageError(f"bad break {chunk!r}; expected u:order")
        pairs.append((parse_rat(u), int(n)))
    return BreakFiltration.of(pairs)


def _cmd_filtration(ns) -> dict:
    F = _parse_breaks(ns.breaks)
    return {
        "lower": F.to_json(),
        "upper": upper_order_function(F).to_json(),
        "phi": {fmt_val(u): fmt_val(herbrand_phi(F, u)) for u in ns.u},
        "psi": {fmt_val(w): fmt_val(herbrand_psi(F, w)) for w in ns.w},
    }


def _cmd_sgn(ns) -> dict:
    if ns.target:
        if any(ch not in "+-" for ch in ns.target):
            raise UsageError("--target must be a string of + and -")
        target = [1 if ch == "+" else -1 for ch in ns.target]
        t = sign_preimage(target, ns.ell)
    elif ns.labels:
        if ns.n is None:
            raise UsageError("--labels needs -n")
        t = TreeAut.from_json({"ell": ns.ell, "n": ns.n,
                               "labels": json.loads(ns.labels)})
    else:
        raise UsageError("give --target or --labels")
    return {"automorphism": t.to_json(), "sgn": list(sgn_vector(t))}


COMMANDS = {
    "classify": _cmd_classify,
    "real": _cmd_real,
    "tree": _cmd_tree,
    "oracle": _cmd_oracle,
    "filtration": _cmd_filtration,
    "sgn": _cmd_sgn,
}


def _apply_config(parser, ns, argv):
    with open(ns.config) as fh:
        cfg = json.load(fh)
    # flags given on the command line win over the config file
    extra = []
    for key, value in cfg.items():
        flag = "--" + key.replace("_", "-") if len(key) > 1 else "-" + key
        if isinstance(value, bool):
            if value:
                extra.append(flag)
        else:
            extra.append(f"{flag}={value}")
    cmd = ns.command
    idx = argv.index(cmd) + 1 if cmd in argv else len(argv)
    return parser.parse_args(argv[:idx] + extra + argv[idx:])


def run(argv: Optional[Sequence[str]] = None, stdout=None) -> int:
    stdout = stdout or sys.stdout
    argv = _glue_negative_values(list(sys.argv[1:] if argv is None else argv))
    parser = build_parser()
    try:
        ns = parser.parse_args(argv)
        if ns.config:
            ns = _apply_config(parser, ns, argv)
        if not ns.command:
            raise UsageError("missing subcommand")
        payload = COMMANDS[ns.command](ns)
        code = EXIT_OK
    except (UsageError, ValueError, IndeterminateRegime, ZeroDivisionError) as exc:
        payload, code = {"error": type(exc).__name__, "message": str(exc)}, EXIT_USAGE
    except (OverflowError, Cancelled) as exc:
        payload, code = {"error": type(exc).__name__, "message": str(exc)}, EXIT_CAP
    except OSError as exc:
        payload, code = {"error": type(exc).__name__, "message": str(exc)}, EXIT_USAGE
    payload["meta"] = {"tool": "arboreal", "version": __version__,
                       "command": getattr(locals().get("ns"), "command", None)}
    text = json.dumps(payload, sort_keys=True, indent=2) + "\n"
    out_path = getattr(locals().get("ns"), "output", None) if code == EXIT_OK else None
    if out_path:
        with open(out_path, "w") as fh:
            fh.write(text)
    else:
        stdout.write(text)
    return code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
