from fractions import Fraction as F

import pytest

from arboreal.classifier import (FixedPointData, classify_real, classify_tame,
                                 classify_wild, degree_growth_bound,
                                 is_one_plus_eps_pth_power, kummer_product_reduction,
                                 max_p_power_index, shallow_ramification_bound)
from arboreal.oracle.polys import RatPoly, iterate_poly
from arboreal.oracle.resultant import resultant
from arboreal.residue import residue_report
from arboreal.valcore import INF, GroundField, nu_threshold, padic_val

from conftest import random_rational_with_val

W2 = GroundField.wild(2)
W3 = GroundField.wild(3)


class TestWild:
    def test_deep_negative_has_level_one_cutoff(self):
        v = classify_wild(W2, F(-5), F(0), r=0)
        assert v.extension_finite and v.cutoff == (1, False)
        tag = v.get_tag("G=I=(Z/lZ)^n")
        assert tag is not None and tag.param("order") == 2
        assert v.get_tag("InertiaLower").param("lower") == 2

    def test_unramified_z2_example(self):
        # c = -1/4, a = 1/2: a is the fixed point b, so v(a - b) = inf
        c, a = F(-1, 4), F(1, 2)
        assert a ** 2 - c == a
        fp = FixedPointData(F(-1), INF, True)
        v = classify_wild(W2, padic_val(c, 2), padic_val(a, 2), fp=fp)
        assert v.regime == "AtNuInfty"
        assert v.extension_finite is False
        assert {"Iinf_trivial", "GmodI=Z_p"} <= set(v.tag_names())
        assert v.ramification == "unramified"
        assert v.shallow_w == 0

    def test_between_regime_exponent(self):
        v = classify_wild(W2, F(-1), F(0))
        assert v.ramification == "infinitely_wildly_ramified"
        assert v.degree_exponent == F(3, 4)

    def test_nonnegative_regime(self):
        v = classify_wild(W2, F(1), F(1))
        assert v.regime == "NonNegative" and v.extension_finite is False

    def test_at_nu_inf_requires_fixed_point(self):
        with pytest.raises(ValueError):
            classify_wild(W2, F(-2), F(0))
        v = classify_wild(W2, F(-2), F(0), inertia=False)
        assert v.regime == "AtNuInfty"

    def test_at_nu_inf_wild_inertia(self):
        fp = FixedPointData(F(-1), F(-1, 2), False)
        v = classify_wild(W2, F(-2), F(0), fp=fp)
        assert {"Iinf_infinite_pro_p", "Iinf=(Z/pZ)^inf"} <= set(v.tag_names())
        v = classify_wild(W2, F(-2), F(-3), fp=fp)
        assert "Iinf_infinite_pro_p" in v.tag_names()
        assert "Iinf=(Z/pZ)^inf" not in v.tag_names()

    def test_finite_residue_flag(self):
        gf = GroundField.wild(2, k_finite=False)
        fp = FixedPointData(F(-1), F(1), False)
        v = classify_wild(gf, F(-2), F(1), fp=fp)
        assert v.extension_finite is None
        assert "Iinf_finite" in v.tag_names()

    def test_boundary_nu_n(self):
        v = classify_wild(W2, F(-4), F(0))
        assert v.cutoff == (2, True)
        assert "Ginf=G(n+1)<=(Z/lZ)^(n+1)" in v.tag_names()

    def test_boundary_va_falls_back(self):
        v = classify_wild(W2, F(-5), F(-5, 2))
        assert v.cutoff == (1, False)
        assert v.get_tag("InertiaLower") is None

    def test_r_validated(self):
        with pytest.raises(ValueError):
            classify_wild(W2, F(-5), F(0), r=1)
        assert max_p_power_index(F(-6), W2) == 1
        assert max_p_power_index(F(-3, 2), GroundField.wild(2, e=2)) == 0

    def test_rejects_tame(self):
        with pytest.raises(ValueError):
            classify_wild(GroundField.tame(2, 3), F(-1), F(0))

    def test_cutoff_monotone_in_vc(self):
        gf = GroundField.wild(2, e=8)
        nu_inf = nu_threshold(INF, gf)
        grid = sorted({F(-k, 8) for k in range(17, 120)})
        last = 0
        for vc in grid:
            assert vc < nu_inf
            n, _ = classify_wild(gf, vc, F(0)).cutoff
            assert n >= last
            last = n
        assert last >= 3

    def test_regime_sequence(self):
        fp = FixedPointData(F(-1), F(0), True)
        got = [classify_wild(W2, vc, F(5), fp=fp).regime
               for vc in (F(-5), F(-4), F(-8, 3), F(-2), F(-1), F(0), F(1))]
        assert got == ["BelowNuInfty"] * 3 + ["AtNuInfty", "Between",
                                                "NonNegative", "NonNegative"]

    def test_depends_only_on_valuations(self, rng):
        for _ in range(200):
            p = rng.choice([2, 3])
            vc, va = rng.randint(-9, 3), rng.randint(-9, 9)
            pair = [(random_rational_with_val(rng, p, vc), random_rational_with_val(rng, p, va))
                    for _ in range(2)]
            gf = GroundField.wild(p)
            verdicts = [classify_wild(gf, padic_val(c, p), padic_val(a, p), inertia=False)
                        .to_json() for c, a in pair]
            assert verdicts[0] == verdicts[1]

    def test_json_schema(self):
        keys = set(classify_wild(W2, F(-5), F(0)).to_json())
        assert keys == {"regime", "finite", "cutoff", "tags", "ramification",
                        "shallow_w", "degree_exponent", "hypotheses"}


class TestTame:
    def test_negative(self):
        v = classify_tame(GroundField.tame(3, 5), F(-1), F(0))
        assert v.extension_finite and v.cutoff == (1, False)

    def test_lemma_style_infinite(self):
        v = classify_tame(GroundField.tame(2, 3), F(1), F(2))
        assert v.ramification == "infinitely_ramified"

    def test_residue_unramified(self):
        rep = residue_report(2, F(1), F(1), 3, exact=False)
        v = classify_tame(GroundField.tame(2, 3), F(0), F(0), residue=rep)
        assert v.ramification == "unramified"

    def test_residue_required(self):
        with pytest.raises(ValueError):
            classify_tame(GroundField.tame(2, 3), F(0), F(0))

    def test_rejects_wild(self):
        with pytest.raises(ValueError):
            classify_tame(W2, F(-1), F(0))


class TestDegreeBound:
    def test_p2_example(self):
        b = degree_growth_bound(W2, F(-1), 4)
        assert (b.r, b.exponent) == (2, F(3, 4))
        assert [(s.lower_level, s.log_p_bound) for s in b.per_step] == [(3, 6)]

    def test_trivial_bound(self):
        assert degree_growth_bound(W2, F(-1), 2).b_n == 64

    def test_p3_small_valuation(self):
        # -1/2 < -3/16 so r = 2 is admissible; see the decisions ledger
        b = degree_growth_bound(W3, F(-1, 2), 3)
        assert (b.r, b.exponent) == (2, F(8, 9))

    def test_nonnegative_rejected(self):
        with pytest.raises(ValueError):
            degree_growth_bound(W2, F(0), 3)

    def test_r_is_admissible_and_minimal(self):
        for p in (2, 3, 5):
            gf = GroundField.wild(p)
            for k in range(1, 40):
                vc = F(-k, 7)
                r = degree_growth_bound(gf, vc, 3).r
                assert vc < F(-p, (p ** r - 1) * (p - 1))
                if r > 1:
                    assert not vc < F(-p, (p ** (r - 1) - 1) * (p - 1))


class TestKummer:
    def test_pth_power(self):
        assert is_one_plus_eps_pth_power(F(3), W2)
        assert F(9) == F(3) ** 2
        assert not is_one_plus_eps_pth_power(F(2), W2)
        assert is_one_plus_eps_pth_power(INF, W3)

    def test_product_reduction(self):
        assert kummer_product_reduction(F(-1), F(-1), 2, W2)
        assert not kummer_product_reduction(F(-1), F(-1), 1, W2)

    @pytest.mark.parametrize("r", [1, 2])
    def test_product_identity(self, r, rng):
        # prod over f^{-r}(alpha) of (beta + c) = (-1)^(p^r) (f^r(-c) - alpha)
        for _ in range(20):
            c = F(rng.randint(-9, 9) or 1, rng.randint(1, 9))
            alpha = F(rng.randint(-9, 9), rng.randint(1, 9))
            P = iterate_poly(2, c, r, alpha)
            lhs = resultant(P, RatPoly([c, 1]))
            rhs = (-1) ** (2 ** r) * (P(-c))
            assert lhs == rhs
            if r == 1:
                assert lhs == c * c - c - alpha


class TestShallow:
    def test_examples(self):
        assert shallow_ramification_bound(1, F(-1)) == 2
        assert shallow_ramification_bound(1, F(3)) == 0
        assert shallow_ramification_bound(2, F(-1, 2)) == 2
        with pytest.raises(ValueError):
            shallow_ramification_bound(1, None)


class TestReal:
    @pytest.mark.parametrize("k,c,a,want", [
        (2, 2, 0, "AllReal"), (2, 2, 3, "Complex"), (3, 1, 0, "Complex"),
        (2, 2, -2, "AllReal"), (2, 2, 2, "AllReal"), (2, F(3, 2), 0, "Complex"),
        (2, 3, 6, "AllReal"), (2, 3, F(61, 10), "Complex"),
    ])
    def test_examples(self, k, c, a, want):
        assert classify_real(k, F(c), F(a)) == want

    def test_zero_c(self):
        with pytest.raises(ValueError):
            classify_real(2, F(0), F(0))
