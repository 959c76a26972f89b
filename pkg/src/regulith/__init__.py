"""Indicator polynomials, regular fractions and their decompositions for
two-level factorial designs."""
from .decompose import Decomposition, decompose_all, decompose_greedy, disjoint
from .gf2core import MultiIndex, Point, Subgroup, enumerate_subgroups, gaussian_binomial, monomial_eval, span
from .polynomial import (
    CountingPolynomial,
    Fraction,
    evaluate,
    from_fraction,
    is_indicator,
    orthogonal_strength,
)
from .regular import (
    RegularSpec,
    find_regular_subfractions,
    inclusion_test,
    indicator_of,
    necessary_test,
    points_of,
    regularity_of,
)

__all__ = [
    "CountingPolynomial",
    "Decomposition",
    "Fraction",
    "MultiIndex",
    "Point",
    "RegularSpec",
    "Subgroup",
    "decompose_all",
    "decompose_greedy",
    "disjoint",
    "enumerate_subgroups",
    "evaluate",
    "find_regular_subfractions",
    "from_fraction",
    "gaussian_binomial",
    "inclusion_test",
    "indicator_of",
    "is_indicator",
    "monomial_eval",
    "necessary_test",
    "orthogonal_strength",
    "points_of",
    "regularity_of",
    "span",
]

__version__ = "0.1.0"
