"""Idempotent semifields and the two instances the kernel works over.

A commutative idempotent semifield has an addition that is associative,
commutative and idempotent (a + a = a), a multiplication under which the
nonzero elements form a group, and the induced order a <= b iff a + b = b
is total.  The kernel uses two such structures:

* ``MAXPLUS`` -- exact rationals with max as addition and + as
  multiplication.  The additive neutral element is ``BOTTOM`` (think
  "minus infinity"); the multiplicative unit is 0.
* ``BOOL`` -- the two-element semifield {0, 1} with 1 + 1 = 1, the only
  finite instance.

Values are plain Python objects (``Fraction`` or ``None`` for max-plus,
ints 0/1 for the boolean instance); the semifield object supplies the
operations.  Everything is immutable and safe to share across threads.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import DomainError, UsageError

#: The semiring zero of max-plus, absorbing for multiplication.
BOTTOM = None


class Semifield:
    """Operation table of a commutative idempotent semifield."""

    zero = None
    one = None

    def coerce(self, value):
        raise NotImplementedError

    def add(self, a, b):
        raise NotImplementedError

    def mul(self, a, b):
        raise NotImplementedError

    def inv(self, a):
        raise NotImplementedError

    def pow(self, a, k):
        """k-fold product of a; a**0 is the unit, even for the zero."""
        if k < 0:
            raise UsageError("exponents must be natural numbers")
        result = self.one
        for _ in range(k):
            result = self.mul(result, a)
        return result

    def sum(self, values):
        result = self.zero
        for v in values:
            result = self.add(result, v)
        return result

    def leq(self, a, b):
        """Order induced by addition: a <= b iff a + b = b."""
        return self.add(a, b) == b

    def quasi_symmetric(self, a):
        """Additive quasi-inverse.  Idempotency forces it to be a itself."""
        return a

    def multiple(self, k):
        """k . 1, the k-fold sum of the unit."""
        result = self.zero
        for _ in range(k):
            result = self.add(result, self.one)
        return result

    def char_set_member(self, k):
        """Whether k . 1 + 1 = 1.  True for every k >= 1 here: both
        instances are idempotent, i.e. of characteristic one."""
        return self.add(self.multiple(k), self.one) == self.one


class MaxPlusRationals(Semifield):
    """Exact rationals under (max, +), with BOTTOM as the zero.

    Coefficients stay in reduced form because ``Fraction`` normalizes on
    construction; no floating point enters at any stage.
    """

    zero = BOTTOM
    one = Fraction(0)

    def coerce(self, value):
        if value is BOTTOM:
            return BOTTOM
        if isinstance(value, Fraction):
            return value
        if isinstance(value, int):
            return Fraction(value)
        if isinstance(value, str):
            return Fraction(value)
        raise UsageError(f"not an exact rational: {value!r}")

    def add(self, a, b):
        if a is BOTTOM:
            return b
        if b is BOTTOM:
            return a
        return a if a >= b else b

    def mul(self, a, b):
        if a is BOTTOM or b is BOTTOM:
            return BOTTOM
        return a + b

    def inv(self, a):
        if a is BOTTOM:
            raise DomainError("zero has no inverse")
        return -a

    def pow(self, a, k):
        if k < 0:
            raise UsageError("exponents must be natural numbers")
        if k == 0:
            return self.one
        if a is BOTTOM:
            return BOTTOM
        return a * k


class TwoElementBoolean(Semifield):
    """The semifield {0, 1} with 1 + 1 = 1 and ordinary multiplication."""

    zero = 0
    one = 1

    def coerce(self, value):
        if value in (0, 1):
            return int(value)
        raise UsageError(f"not a boolean semifield element: {value!r}")

    def add(self, a, b):
        return 1 if (a or b) else 0

    def mul(self, a, b):
        return 1 if (a and b) else 0

    def inv(self, a):
        if a == 0:
            raise DomainError("zero has no inverse")
        return 1


MAXPLUS = MaxPlusRationals()
BOOL = TwoElementBoolean()
