"""Shared random generators for the property suites.

Everything takes an explicit seeded Random so failures reproduce; the
suites never touch global random state.
"""

import random
from fractions import Fraction

import pytest

from tropoly.polynomial import Polynomial


def rand_coeff(rng, lo=-20, hi=20, max_den=4):
    den = rng.randint(1, max_den)
    return Fraction(rng.randint(lo * den, hi * den), den)


def rand_univariate(rng, max_deg=10, lo=-20, hi=20, max_den=4):
    """Random nonzero one-variable polynomial."""
    deg = rng.randint(0, max_deg)
    exps = {deg} | {rng.randint(0, deg) for _ in range(rng.randint(0, deg))}
    return Polynomial(1, {(e,): rand_coeff(rng, lo, hi, max_den) for e in exps})


def rand_bivariate(rng, max_support=5, max_exp=4, lo=-10, hi=10, max_den=2,
                   with_constant=False):
    """Random nonzero two-variable polynomial with bounded support."""
    size = rng.randint(1, max_support)
    support = set()
    while len(support) < size:
        support.add((rng.randint(0, max_exp), rng.randint(0, max_exp)))
    if with_constant:
        support.add((0, 0))
    return Polynomial(2, {e: rand_coeff(rng, lo, hi, max_den) for e in support})


def rand_point(rng, arity, bound=10, max_den=8):
    return tuple(rand_coeff(rng, -bound, bound, max_den) for _ in range(arity))


@pytest.fixture
def rng():
    return random.Random(20260810)
