"""Exact polynomial algebra over the max-plus rationals.

The kernel manipulates tropical polynomials with exact rational
coefficients: canonical forms through concave envelopes, Newton-polygon
roots and factorization in one variable, variety cell complexes and
dominance graphs, and decidable principal-ideal theory.  A command-line
front end lives in :mod:`tropoly.cli`.
"""

from .errors import DomainError, InfeasibleError, ParseError, TropicalError, UsageError
from .semifield import BOOL, BOTTOM, MAXPLUS
from .polynomial import Polynomial
from .geometry import (
    AffineForm,
    Constraint,
    InequalitySystem,
    UNBOUNDED,
    affine_dimension,
    is_strictly_feasible,
    lattice_points,
    lp_max,
    minkowski_sum,
)
from .canon import (
    RationalPolynomial,
    canonicalize,
    divide,
    divides_power,
    envelope_value,
    extremal_monomials,
    power_cancel,
    rat_add,
    rat_equal,
    rat_mul,
    rat_pow,
)
from .univariate import RootMultiset, adjoin_nth_root, factor, roots, root_ideal_member
from .variety import (
    Cell,
    DominanceGraph,
    VarietyComplex,
    dominance_graph,
    dominance_regions,
    edge_exponent,
    variety_cells,
    variety_contains_point,
    variety_included,
)
from .ideals import (
    closure_member,
    closure_witness,
    congruent_mod,
    is_closed,
    is_dense,
    membership_exact,
    radical_member,
)

__version__ = "0.1.0"

__all__ = [
    "AffineForm",
    "BOOL",
    "BOTTOM",
    "Cell",
    "Constraint",
    "DomainError",
    "DominanceGraph",
    "InequalitySystem",
    "InfeasibleError",
    "MAXPLUS",
    "ParseError",
    "Polynomial",
    "RationalPolynomial",
    "RootMultiset",
    "TropicalError",
    "UNBOUNDED",
    "UsageError",
    "VarietyComplex",
    "adjoin_nth_root",
    "affine_dimension",
    "canonicalize",
    "closure_member",
    "closure_witness",
    "congruent_mod",
    "divide",
    "divides_power",
    "dominance_graph",
    "dominance_regions",
    "edge_exponent",
    "envelope_value",
    "extremal_monomials",
    "factor",
    "is_closed",
    "is_dense",
    "is_strictly_feasible",
    "lattice_points",
    "lp_max",
    "membership_exact",
    "minkowski_sum",
    "power_cancel",
    "radical_member",
    "rat_add",
    "rat_equal",
    "rat_mul",
    "rat_pow",
    "root_ideal_member",
    "roots",
    "variety_cells",
    "variety_contains_point",
    "variety_included",
]
