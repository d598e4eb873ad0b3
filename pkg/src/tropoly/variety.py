"""Tropical varieties over finite rational points.

The variety of a canonical class is where its evaluation maximum is
attained at least twice.  It decomposes into polyhedral cells indexed by
pairs of extremal monomials: the locus where the pair ties and weakly
dominates the rest.  The dominance graph has the extremal monomials as
vertices and the codimension-1 cells as edges; it is connected.  Variety
inclusion is decided cell by cell through emptiness of exact linear
systems, which also powers the radical and congruence procedures in
:mod:`tropoly.ideals`.

Points with bottom coordinates are deliberately excluded here; they
remain reachable through the pointwise zero test on polynomials.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .canon import RationalPolynomial, monomial_versus_constraints
from .errors import DomainError, UsageError
from .geometry import (
    AffineForm,
    Constraint,
    InequalitySystem,
    affine_dimension,
    is_strictly_feasible,
)
from .semifield import BOTTOM


@dataclass(frozen=True)
class Cell:
    """Tie locus of one pair of extremal monomials.

    `tie` is the affine form vanishing on the pair's wall; `system`
    conjoins that equality with weak dominance over the remaining
    extremal monomials.  `witness` is an exact point of the cell.
    """

    pair: tuple
    tie: AffineForm
    system: InequalitySystem
    dimension: int
    witness: tuple


@dataclass(frozen=True)
class VarietyComplex:
    cells: tuple
    source: RationalPolynomial


@dataclass(frozen=True)
class GraphEdge:
    pair: tuple
    form: AffineForm
    cell: Cell


@dataclass(frozen=True)
class DominanceGraph:
    vertices: tuple
    edges: tuple
    connected: bool


def _require_nonzero(r):
    if not isinstance(r, RationalPolynomial):
        raise UsageError("expected a RationalPolynomial")
    if r.is_zero:
        raise DomainError("the zero class has no variety data")


def dominance_regions(r):
    """The extremal monomials with an interior point of their strict
    dominance region, i.e. exactly the vertices of the dominance graph."""
    _require_nonzero(r)
    return [(alpha, r.witnesses[alpha]) for alpha in sorted(r.extremal_terms)]


def _tie_form(terms, alpha, beta):
    coeffs = tuple(Fraction(a - b) for a, b in zip(alpha, beta))
    return AffineForm(coeffs, Fraction(terms[alpha] - terms[beta]))


def _pair_system(r, alpha, beta):
    terms = r.extremal_terms
    tie = _tie_form(terms, alpha, beta)
    rest = {g: c for g, c in terms.items() if g not in (alpha, beta)}
    constraints = [Constraint(tie, "=")]
    constraints += monomial_versus_constraints(alpha, terms[alpha], rest, strict=False)
    return tie, InequalitySystem(r.arity, constraints)


def _cell_for_pair(r, alpha, beta):
    tie, system = _pair_system(r, alpha, beta)
    feasible, witness = is_strictly_feasible(system)
    if not feasible:
        return None
    return Cell(
        pair=(alpha, beta),
        tie=tie,
        system=system,
        dimension=affine_dimension(system),
        witness=witness,
    )


def variety_cells(r):
    """All non-empty tie cells over unordered pairs of extremal
    monomials.  Fewer than two extremal monomials means the variety has
    no finite points and the complex is empty."""
    _require_nonzero(r)
    exps = sorted(r.extremal_terms)
    cells = []
    for i, alpha in enumerate(exps):
        for beta in exps[i + 1 :]:
            cell = _cell_for_pair(r, alpha, beta)
            if cell is not None:
                cells.append(cell)
    return VarietyComplex(cells=tuple(cells), source=r)


def dominance_graph(r):
    """Vertices are the extremal monomials, edges the codimension-1 tie
    cells.  The graph is connected for every nonzero class."""
    _require_nonzero(r)
    vertices = tuple(sorted(r.extremal_terms))
    complex_ = variety_cells(r)
    wanted = r.arity - 1
    edges = tuple(
        GraphEdge(pair=c.pair, form=c.tie, cell=c)
        for c in complex_.cells
        if c.dimension == wanted
    )
    adjacency = {v: set() for v in vertices}
    for e in edges:
        a, b = e.pair
        adjacency[a].add(b)
        adjacency[b].add(a)
    seen = set()
    stack = [vertices[0]]
    while stack:
        v = stack.pop()
        if v in seen:
            continue
        seen.add(v)
        stack.extend(adjacency[v] - seen)
    return DominanceGraph(
        vertices=vertices, edges=edges, connected=len(seen) == len(vertices)
    )


def variety_contains_point(r, point):
    """Membership of a finite rational point in the variety."""
    _require_nonzero(r)
    if any(x is BOTTOM for x in point):
        raise UsageError("variety membership is defined over finite points")
    return r.min_representative().is_zero_at(tuple(Fraction(x) for x in point))


def variety_included(r, s):
    """Whether the variety of r is contained in the variety of s.

    A cell of r escapes the variety of s exactly when some monomial of s
    strictly dominates all the others somewhere on the cell, so inclusion
    reduces to emptiness of one exact system per (cell, monomial) pair.
    """
    _require_nonzero(r)
    _require_nonzero(s)
    if r.arity != s.arity:
        raise UsageError(f"arity mismatch: {r.arity} vs {s.arity}")
    s_terms = s.extremal_terms
    for cell in variety_cells(r).cells:
        for gamma in sorted(s_terms):
            rest = {g: c for g, c in s_terms.items() if g != gamma}
            escape = cell.system.with_constraints(
                monomial_versus_constraints(gamma, s_terms[gamma], rest, strict=True)
            )
            if is_strictly_feasible(escape)[0]:
                return False
    return True


def _proportionality(l_form, m_form):
    """The positive rational k with l = k * m, or None."""
    l_vec = l_form.coeffs + (l_form.const,)
    m_vec = m_form.coeffs + (m_form.const,)
    k = None
    for a, b in zip(l_vec, m_vec):
        if b == 0:
            if a != 0:
                return None
            continue
        ratio = Fraction(a) / Fraction(b)
        if k is None:
            k = ratio
        elif k != ratio:
            return None
    if k is None or k <= 0:
        return None
    return k


def edge_exponent(r, s, edge):
    """The positive rational exponent relating a shared wall of two
    classes with equal varieties: the edge's tie form of r equals that
    power of the matching tie form of s.
    """
    _require_nonzero(r)
    _require_nonzero(s)
    if r.arity != s.arity:
        raise UsageError(f"arity mismatch: {r.arity} vs {s.arity}")
    s_terms = s.extremal_terms
    exps = sorted(s_terms)
    l_form = edge.form
    for i, gamma in enumerate(exps):
        for delta in exps[i + 1 :]:
            m_form = _tie_form(s_terms, gamma, delta)
            for candidate in (m_form, m_form.negated()):
                k = _proportionality(l_form, candidate)
                if k is None:
                    continue
                # the wall must be geometrically shared, not merely parallel
                overlap = edge.cell.system.conjoin(_pair_system(s, gamma, delta)[1])
                if affine_dimension(overlap) == r.arity - 1:
                    return k
    raise DomainError("varieties do not share this wall")
