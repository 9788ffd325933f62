"""Acceptance suite: one PASS/FAIL line per criterion.

Run with ``pytest tests/test_acceptance.py -v``; the verdict lines are
written straight to the terminal, bypassing capture.
"""

import itertools
import random
import time
from fractions import Fraction as F

import pytest

from arboreal.classifier import classify_real, classify_wild
from arboreal.dynamics import (additive_switch_index, class_partition_prediction,
                               cutoff_level, difference_split, dn_sequence, q_sequence,
                               val_orbit)
from arboreal.oracle import (RatPoly, difference_val_multiset, iterate_poly,
                             real_all_real_check, root_val_multiset)
from arboreal.ramfilt import BreakFiltration, herbrand_phi, herbrand_psi, upper_order_function
from arboreal.residue import (FiniteField, exact_cycle_check, orbit_analysis,
                              residue_report, tame_verdict)
from arboreal.treeauto import TreeAut, sgn_vector, sign_preimage
from arboreal.valcore import GroundField, padic_val

from conftest import gf_for, random_rational_with_val

W2 = GroundField.wild(2)


@pytest.fixture
def verdict(capsys):
    """Print the criterion's verdict line, then fail the test if needed."""
    def emit(number, ok, detail, elapsed):
        line = f"ACCEPTANCE {number:2d} {'PASS' if ok else 'FAIL'}  {detail}  [{elapsed:.2f} s]"
        with capsys.disabled():
            print("\n" + line)
        assert ok, line
    return emit


def test_criterion_01_difference_split_vs_polygon(verdict):
    rng = random.Random(1)
    t0 = time.perf_counter()
    bad = []
    for _ in range(200):
        ell, p = rng.choice([2, 3]), rng.choice([2, 3, 5])
        gf = gf_for(ell, p)
        c = random_rational_with_val(rng, p, rng.randint(-6, 3))
        y = random_rational_with_val(rng, p, rng.randint(-4, 4))
        d = random_rational_with_val(rng, p, rng.randint(-10, 10))
        # f(y + z) - f(y) - d, expanded exactly
        z = RatPoly([0, 1])
        shifted = (z + y) ** ell - c - (RatPoly([y ** ell - c]) + d)
        got = root_val_multiset(shifted, p)
        split = difference_split(padic_val(d, p), padic_val(y, p), gf)
        ok = got == split.valuations()
        if ok and split.case == "OneCloseRest":
            ok = split.close_val in got.rational
        if not ok:
            bad.append((ell, p, y, d))
    elapsed = time.perf_counter() - t0
    ok = not bad and elapsed < 5
    verdict(1, ok, f"difference split vs Newton polygon, 200 instances, "
                   f"{len(bad)} mismatches", elapsed)


def test_criterion_02_cutoff_levels(verdict):
    t0 = time.perf_counter()
    expected = {F(1, 32): (1, False), F(1, 16): (2, True), F(1, 8): (2, False)}
    lines, ok = [], True
    for c, want in expected.items():
        vc, va = padic_val(c, 2), padic_val(F(1), 2)
        cut = classify_wild(W2, vc, va).cutoff
        direct = cutoff_level(vc, W2)
        switch = additive_switch_index(vc, va, W2)
        seq = q_sequence(vc, va, W2, 6)
        exact = all(b.exact for b in seq)
        stab = val_orbit(va, vc, W2, 4).stabilization_level
        good = cut == want == direct and switch == want[0] and exact and stab == 1
        ok &= good
        lines.append(f"v(c)={vc}: cutoff={cut} switch={switch}")
    verdict(2, ok, "; ".join(lines), time.perf_counter() - t0)


def test_criterion_03_class_partition_counts(verdict):
    t0 = time.perf_counter()
    c, a = F(1, 8), F(1)
    parts, ok = [], True
    for n in (1, 2, 3):
        pr = class_partition_prediction(padic_val(c, 2), W2, n)
        diffs = difference_val_multiset(iterate_poly(2, c, n, a), 2)
        above = diffs.count_where(lambda v: v > pr.delta)
        at = diffs[pr.delta]
        want_above = 2 * 2 ** (n - 1) * (2 ** (n - 1) - 1)
        good = above == want_above and at == len(diffs) - want_above and \
            len(diffs) == 2 ** n * (2 ** n - 1)
        ok &= good
        parts.append(f"n={n}: {above} above / {at} at -1/2")
    elapsed = time.perf_counter() - t0
    verdict(3, ok and elapsed < 60, "; ".join(parts), elapsed)


def test_criterion_04_boundary_all_zero(verdict):
    t0 = time.perf_counter()
    parts, ok = [], True
    for n in (1, 2, 3):
        diffs = difference_val_multiset(iterate_poly(2, F(1, 4), n, F(1)), 2)
        total = 2 ** n * (2 ** n - 1)
        good = diffs == {F(0): total}
        ok &= good
        parts.append(f"n={n}: {diffs[F(0)]}/{total} at 0")
    verdict(4, ok, "; ".join(parts), time.perf_counter() - t0)


def test_criterion_05_root_valuation_stabilization(verdict):
    rng = random.Random(5)
    t0 = time.perf_counter()
    bad, exact_levels, bound_levels = [], 0, 0
    fields = [(2, 2), (3, 3), (2, 3), (3, 2)]
    for _ in range(50):
        ell, p = rng.choice(fields)
        gf = gf_for(ell, p)
        vc = rng.randint(-8, -1)
        c = random_rational_with_val(rng, p, vc)
        a = F(0) if rng.random() < 0.1 else random_rational_with_val(rng, p, rng.randint(-12, 6))
        report = val_orbit(padic_val(a, p), F(vc), gf, 4)
        for n, pred in enumerate(report.levels, start=1):
            roots = root_val_multiset(iterate_poly(ell, c, n, a), p)
            if pred.exact:
                exact_levels += 1
                if roots != {pred.value: ell ** n}:
                    bad.append((ell, p, c, a, n))
            else:
                bound_levels += 1
                if not all(v >= pred.value for v in roots.values()):
                    bad.append((ell, p, c, a, n))
    verdict(5, not bad, f"50 instances: {exact_levels} exact levels matched, "
                        f"{bound_levels} bound levels respected, {len(bad)} mismatches",
            time.perf_counter() - t0)


def test_criterion_06_dn_denominators(verdict):
    t0 = time.perf_counter()
    parts, ok = [], True
    for c, a in ((F(2), F(2)), (F(1, 2), F(1))):
        vc, va = padic_val(c, 2), padic_val(a, 2)
        seq = dn_sequence(vc, va if vc >= 0 else None, W2, 3)
        d1_den = seq[0].denominator
        for n in (1, 2, 3):
            P = iterate_poly(2, c, n, a)
            diffs = difference_val_multiset(P, 2, squarefree=not P.is_separable())
            target = seq[n - 1]
            good = diffs[target] > 0 and target == seq[0] / 2 ** (n - 1)
            if seq[0].numerator % 2:
                # p-free numerator: the denominator is exactly 2^(n-1) den(v(d_1))
                good &= target.denominator == 2 ** (n - 1) * d1_den
            ok &= good
            parts.append(f"c={c} n={n}: v(d_n)={target} present={diffs[target] > 0}")
    verdict(6, ok, "; ".join(parts), time.perf_counter() - t0)


def _random_filtration(rng):
    k = rng.randint(0, 5)
    orders = [1]
    for _ in range(k):
        orders.append(orders[-1] * rng.choice([2, 3, 5]))
    orders.reverse()
    us = [F(0)]
    for _ in range(k):
        us.append(us[-1] + F(rng.randint(1, 40), rng.randint(1, 12)))
    return BreakFiltration(tuple(zip(us, orders)))


def test_criterion_07_herbrand_round_trip(verdict):
    rng = random.Random(7)
    t0 = time.perf_counter()
    bad = 0
    for _ in range(500):
        Fl = _random_filtration(rng)
        samples = Fl.points() + [F(rng.randint(0, 400), rng.randint(1, 9)) for _ in range(6)]
        for u in samples:
            if herbrand_psi(Fl, herbrand_phi(Fl, u)) != u:
                bad += 1
    fixed = all(upper_order_function(BreakFiltration.of([(0, p), (1, 1)])) ==
                BreakFiltration.of([(0, p), (1, 1)]) for p in (2, 3, 5, 7))
    verdict(7, bad == 0 and fixed, f"500 filtrations, {bad} round-trip failures; "
                                   f"single break at 1 fixed by upper transport: {fixed}",
            time.perf_counter() - t0)


def test_criterion_08_real_grid(verdict):
    t0 = time.perf_counter()
    steps = 40
    dc, da = F(7, 2) / (steps - 1), F(10) / (steps - 1)
    agree = undecided = 0
    disagreements, stray = [], []
    for i, j in itertools.product(range(steps), repeat=2):
        c, a = F(1, 2) + i * dc, F(-5) + j * da
        want = classify_real(2, c, a)
        got = real_all_real_check(2, c, a, depth=10).verdict
        if got == "Undecided":
            undecided += 1
            step = max(dc, da)
            if not (abs(a + c) < step or abs(a - (c * c - c)) < step):
                stray.append((c, a))
        elif (want == "AllReal") == (got == "AllRealToDepth"):
            agree += 1
        else:
            disagreements.append((c, a, want, got))
    elapsed = time.perf_counter() - t0
    ok = not disagreements and not stray and elapsed < 120
    verdict(8, ok, f"40x40 grid: {agree} agree, {undecided} undecided "
                   f"({len(stray)} off-boundary), {len(disagreements)} disagree", elapsed)


def _hand_case(p, c, a):
    """Independent case analysis by plain modular iteration."""
    xs = [0]
    for _ in range(2 * p + 2):
        xs.append((xs[-1] ** 2 - c) % p)
    orbit = set(xs)
    if a not in orbit:
        return "a"
    periodic = 0 in xs[1:p + 2]
    return "cd" if periodic else "b"


def test_criterion_09_tame_residue(verdict):
    t0 = time.perf_counter()
    letter = {"Unramified": "a", "IndexDividesL": "b",
              "UnramifiedSingleCycle": "cd", "InfinitelyRamified": "cd"}
    total = mismatches = 0
    for p in (3, 5):
        K = FiniteField(p)
        for cb, ab in itertools.product(range(p), repeat=2):
            rep = orbit_analysis(2, cb, ab, K)
            for exact in (True, False):
                total += 1
                if letter[tame_verdict(rep, exact)] != _hand_case(p, cb, ab):
                    mismatches += 1
    examples = (
        tame_verdict(orbit_analysis(2, 1, 1, FiniteField(3))) == "Unramified"
        and tame_verdict(orbit_analysis(2, 2, 0, FiniteField(3))) == "IndexDividesL"
        and tame_verdict(orbit_analysis(2, 0, 0, FiniteField(3)), False) == "InfinitelyRamified"
    )
    rep_c = residue_report(2, F(1), F(0), 3, exact=False)
    rep_d = residue_report(2, F(3), F(3), 3, exact=False)
    case_c = exact_cycle_check(2, F(1), F(0), 3, rep_c) is True
    case_d = exact_cycle_check(2, F(3), F(3), 3, rep_d) is False
    final_c = tame_verdict(residue_report(2, F(1), F(0), 3)) == "UnramifiedSingleCycle"
    final_d = tame_verdict(residue_report(2, F(3), F(3), 3)) == "InfinitelyRamified"
    ok = mismatches == 0 and examples and case_c and case_d and final_c and final_d
    verdict(9, ok, f"F_3 and F_5: {total} verdicts, {mismatches} mismatches; "
                   f"(1,0,3) case (c): {case_c and final_c}; (3,3,3) case (d): "
                   f"{case_d and final_d}", time.perf_counter() - t0)


def test_criterion_10_sign_surjectivity(verdict):
    t0 = time.perf_counter()
    missed = 0
    hit = 0
    for n in range(1, 7):
        for target in itertools.product((1, -1), repeat=n):
            hit += 1
            if sgn_vector(sign_preimage(target)) != target:
                missed += 1
    rng = random.Random(10)
    hom_fail = 0
    for _ in range(1000):
        n = rng.randint(1, 5)
        s, t = TreeAut.random(2, n, rng), TreeAut.random(2, n, rng)
        if sgn_vector(s * t) != tuple(x * y for x, y in zip(sgn_vector(s), sgn_vector(t))):
            hom_fail += 1
    verdict(10, missed == 0 and hom_fail == 0,
            f"{hit - missed}/{hit} sign targets realized for n <= 6; "
            f"{hom_fail} homomorphism failures in 1000 pairs", time.perf_counter() - t0)
