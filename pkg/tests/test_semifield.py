import itertools
from fractions import Fraction

import pytest

from tropoly.errors import DomainError
from tropoly.semifield import BOOL, BOTTOM, MAXPLUS

from conftest import rand_coeff

BOOL_ELEMENTS = (0, 1)


def test_maxplus_add_is_max():
    assert MAXPLUS.add(Fraction(2), Fraction(3)) == 3
    assert MAXPLUS.add(BOTTOM, Fraction(-7)) == -7
    assert MAXPLUS.add(BOTTOM, BOTTOM) is BOTTOM


def test_maxplus_mul_is_rational_addition():
    assert MAXPLUS.mul(Fraction(2), Fraction(3)) == 5
    assert MAXPLUS.mul(BOTTOM, Fraction(3)) is BOTTOM


def test_maxplus_inverse():
    assert MAXPLUS.inv(Fraction(5, 2)) == Fraction(-5, 2)
    with pytest.raises(DomainError):
        MAXPLUS.inv(BOTTOM)


def test_bool_idempotent_addition():
    assert BOOL.add(1, 1) == 1
    assert BOOL.add(0, 1) == 1
    assert BOOL.mul(1, 1) == 1
    assert BOOL.mul(0, 1) == 0
    with pytest.raises(DomainError):
        BOOL.inv(0)


def test_quasi_symmetric_is_identity():
    assert MAXPLUS.quasi_symmetric(Fraction(3)) == 3
    assert MAXPLUS.quasi_symmetric(BOTTOM) is BOTTOM
    assert MAXPLUS.quasi_symmetric(MAXPLUS.one) == MAXPLUS.one
    for a in BOOL_ELEMENTS:
        assert BOOL.quasi_symmetric(a) == a


def test_characteristic_one():
    assert BOOL.char_set_member(1)
    assert MAXPLUS.char_set_member(7)
    assert MAXPLUS.char_set_member(2)
    assert all(BOOL.char_set_member(k) for k in range(1, 20))
    assert all(MAXPLUS.char_set_member(k) for k in range(1, 20))


def test_bool_exhaustive_laws():
    K = BOOL
    for a, b, c in itertools.product(BOOL_ELEMENTS, repeat=3):
        assert K.add(a, b) == K.add(b, a)
        assert K.mul(a, b) == K.mul(b, a)
        assert K.add(K.add(a, b), c) == K.add(a, K.add(b, c))
        assert K.mul(K.mul(a, b), c) == K.mul(a, K.mul(b, c))
        assert K.mul(a, K.add(b, c)) == K.add(K.mul(a, b), K.mul(a, c))
    for a in BOOL_ELEMENTS:
        assert K.add(a, a) == a
        assert K.add(a, K.zero) == a
        assert K.mul(a, K.one) == a
        assert K.mul(a, K.zero) == K.zero


def test_maxplus_random_laws(rng):
    K = MAXPLUS
    pool = [BOTTOM] + [rand_coeff(rng) for _ in range(30)]
    for _ in range(300):
        a, b, c = (rng.choice(pool) for _ in range(3))
        assert K.add(a, a) == a
        assert K.add(a, b) == K.add(b, a)
        assert K.add(K.add(a, b), c) == K.add(a, K.add(b, c))
        assert K.mul(K.mul(a, b), c) == K.mul(a, K.mul(b, c))
        assert K.mul(a, K.add(b, c)) == K.add(K.mul(a, b), K.mul(a, c))
        assert K.add(a, K.zero) == a
        assert K.mul(a, K.one) == a
        assert K.mul(a, K.zero) == K.zero


def test_total_order_coherence(rng):
    K = MAXPLUS
    pool = [BOTTOM] + [rand_coeff(rng) for _ in range(30)]
    for _ in range(200):
        a, b = rng.choice(pool), rng.choice(pool)
        s = K.add(a, b)
        assert s == a or s == b


def test_freshman_dream_on_elements(rng):
    K = MAXPLUS
    for _ in range(100):
        a, b = rand_coeff(rng), rand_coeff(rng)
        for n in range(17):
            assert K.pow(K.add(a, b), n) == K.add(K.pow(a, n), K.pow(b, n))
    for a, b in itertools.product(BOOL_ELEMENTS, repeat=2):
        for n in range(17):
            assert BOOL.pow(BOOL.add(a, b), n) == BOOL.add(
                BOOL.pow(a, n), BOOL.pow(b, n)
            )


def test_group_laws_on_nonzero(rng):
    for _ in range(100):
        a = rand_coeff(rng)
        assert MAXPLUS.mul(a, MAXPLUS.inv(a)) == MAXPLUS.one
    assert BOOL.mul(1, BOOL.inv(1)) == BOOL.one


def test_bottom_powers():
    assert MAXPLUS.pow(BOTTOM, 0) == MAXPLUS.one
    assert MAXPLUS.pow(BOTTOM, 3) is BOTTOM
