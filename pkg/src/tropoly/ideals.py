"""Decidable theory of principal ideals.

Two ambient objects are kept apart on purpose.  Membership in P*K[X]
uses raw coefficientwise equality in the polynomial semiring (no
canonicalization): the candidate quotient is the coefficientwise
residuation and acceptance is an exact product check.  Congruence and
radical membership live in the simplifiable envelope, where the
generator's variety carries all the information: two classes are
congruent modulo (P) when they agree as functions on every cell of the
variety, and Q lies in the radical of (P) exactly when the variety of P
sits inside the variety of Q.
"""

from __future__ import annotations

from .canon import RationalPolynomial, monomial_versus_constraints
from .errors import DomainError, UsageError
from .polynomial import Polynomial
from .semifield import MAXPLUS
from .geometry import is_strictly_feasible
from .variety import variety_cells, variety_included


def _require_generator(p):
    if p.semifield is not MAXPLUS:
        raise UsageError("ideal theory requires the max-plus rationals")
    if p.arity != 1:
        raise UsageError(f"expected one variable, got arity {p.arity}")
    if p.is_zero:
        raise DomainError("the zero polynomial generates the zero ideal")


def _valuation(poly):
    return min(e[0] for e in poly.terms)


def membership_exact(a, p):
    """The exact quotient Q with P*Q = a in K[X] (raw coefficientwise
    equality), or None.

    The candidate coefficient at each shift is the residuation
    min(a[i+j] - p[i]); a missing coefficient of `a` forces bottom.  The
    candidate is the greatest subsolution, so the final product check is
    a complete decision.
    """
    _require_generator(p)
    if a.arity != 1:
        raise UsageError("membership is defined for one-variable polynomials")
    if a.is_zero:
        return Polynomial.zero(1)
    deg_a, deg_p = a.degree(), p.degree()
    terms = {}
    for j in range(deg_a - deg_p + 1):
        gaps = []
        for (i,), c in p.terms.items():
            have = a.terms.get((i + j,))
            if have is None:
                # a missing coefficient of `a` forces this shift to bottom
                gaps = None
                break
            gaps.append(have - c)
        if gaps:
            terms[(j,)] = min(gaps)
    candidate = Polynomial(1, terms)
    return candidate if p * candidate == a else None


def closure_member(a, p):
    """Whether a lies in the closure of the ideal generated by p.

    Writing p = x**v * p' with a nonzero constant term in p', the closure
    is everything of valuation at least v, so the test only reads the
    low-order coefficients of a.
    """
    _require_generator(p)
    if a.arity != 1:
        raise UsageError("closure membership is defined for one-variable polynomials")
    if a.is_zero:
        return True
    return _valuation(a) >= _valuation(p)


def closure_witness(a, p):
    """An explicit Q certifying (a + I) meets I: a + p*Q = p*Q holds
    coefficientwise.  None when a is outside the closure."""
    if not closure_member(a, p):
        return None
    if a.is_zero:
        return Polynomial.zero(1)
    v = _valuation(p)
    anchor = p.terms[(v,)]
    terms = {(e[0] - v,): c - anchor for e, c in a.terms.items()}
    return Polynomial(1, terms)


def is_dense(p):
    """Dense ideal: every element's class meets the ideal.  Holds exactly
    when the generator has a nonzero constant term."""
    _require_generator(p)
    return (0,) in p.terms


def is_closed(p):
    """Closed ideal: the closure adds nothing.  The closure of (p) is
    x**v * K[X] (everything, when v = 0), which equals the ideal itself
    exactly for monomial generators."""
    _require_generator(p)
    return len(p.terms) == 1


def _agrees_on_cells(cells, left, right):
    """No point of any cell where some monomial of `left` attains left's
    maximum yet strictly exceeds every monomial of `right`."""
    l_terms = left.extremal_terms
    r_terms = right.extremal_terms
    for cell in cells:
        for alpha, c_alpha in sorted(l_terms.items()):
            rest = {b: c for b, c in l_terms.items() if b != alpha}
            constraints = monomial_versus_constraints(alpha, c_alpha, rest, strict=False)
            constraints += monomial_versus_constraints(alpha, c_alpha, r_terms, strict=True)
            if is_strictly_feasible(cell.system.with_constraints(constraints))[0]:
                return False
    return True


def congruent_mod(a, b, p):
    """Congruence of two classes modulo the principal ideal generated by
    a nonzero class: equality as functions on the variety of the
    generator, decided cell by cell over finite points."""
    for r in (a, b, p):
        if not isinstance(r, RationalPolynomial):
            raise UsageError("congruence operates on RationalPolynomial classes")
    if not (a.arity == b.arity == p.arity):
        raise UsageError("arity mismatch")
    if p.is_zero:
        raise DomainError("the zero class generates the zero ideal")
    if a.extremal_terms == b.extremal_terms:
        return True
    if a.is_zero or b.is_zero:
        # a nonzero class never agrees with the zero class on a non-empty
        # cell, and trivially does on an empty variety
        return not variety_cells(p).cells
    cells = variety_cells(p).cells
    return _agrees_on_cells(cells, a, b) and _agrees_on_cells(cells, b, a)


def radical_member(q, p):
    """Whether q belongs to the radical of the ideal generated by p,
    i.e. some power of q is a multiple of p.  Equivalent to the variety
    of p being contained in the variety of q."""
    for r in (q, p):
        if not isinstance(r, RationalPolynomial):
            raise UsageError("radical membership operates on RationalPolynomial classes")
        if r.is_zero:
            raise DomainError("radical membership needs nonzero classes")
    if q.arity != p.arity:
        raise UsageError("arity mismatch")
    return variety_included(p, q)
