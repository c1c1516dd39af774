"""Exact commutative-algebra kernel: polynomials, Groebner bases, multidegrees."""

from .poly import GREVLEX, LEX, MultiPoly, TermOrder, poly_ring
from .groebner import (
    GroebnerBasis,
    eliminate,
    groebner,
    homogenize,
    ideal_contains,
    ideal_quotient,
    ideals_equal,
    in_ideal,
    normal_form,
    saturate,
)
from .mdeg import (
    MonomialIdealSummary,
    WeightAssignment,
    dimension,
    minimal_primes,
    monomial_ideal_summary,
    multidegree,
    multidegree_monomial,
    multidegree_monomial_recursive,
    multigraded_hilbert,
)

__all__ = [
    "GREVLEX",
    "LEX",
    "MultiPoly",
    "TermOrder",
    "poly_ring",
    "GroebnerBasis",
    "groebner",
    "normal_form",
    "in_ideal",
    "ideal_contains",
    "ideals_equal",
    "eliminate",
    "saturate",
    "ideal_quotient",
    "homogenize",
    "WeightAssignment",
    "MonomialIdealSummary",
    "minimal_primes",
    "monomial_ideal_summary",
    "multidegree",
    "multidegree_monomial",
    "multidegree_monomial_recursive",
    "multigraded_hilbert",
    "dimension",
]
