import random
from fractions import Fraction

import pytest


def random_rational_with_val(rng: random.Random, p: int, v: int, spread: int = 30) -> Fraction:
    """A rational of exact p-adic valuation v with a unit part coprime to p."""
    def unit():
        while True:
            k = rng.randint(1, spread)
            if k % p:
                return k
    q = Fraction(unit(), unit()) * rng.choice((1, -1))
    return q * Fraction(p) ** v


@pytest.fixture
def rng():
    return random.Random(20161016)


def gf_for(ell: int, p: int):
    """Wild field when ell == p, otherwise the tame field of residue char p."""
    from arboreal.valcore import GroundField
    return GroundField.wild(p) if ell == p else GroundField.tame(ell, p)


def shifted_difference_points(ell: int, y: Fraction, d: Fraction, p: int):
    """Newton points of (y+z)^ell - y^ell - d, i.e. f(y+z) - f(y) - d."""
    from math import comb
    from arboreal.valcore import padic_val
    pts = [(0, padic_val(-d, p))]
    for i in range(1, ell + 1):
        pts.append((i, padic_val(comb(ell, i) * y ** (ell - i), p)))
    return pts
