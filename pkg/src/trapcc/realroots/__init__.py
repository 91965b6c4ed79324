"""Exact polynomial tools: Sturm counting, resultants, radical elimination."""

from .elimination import (
    TARGET_M2EQ1,
    TARGET_M2M3,
    TARGETS,
    DegreeMismatch,
    EliminationResult,
    eliminate_radicals_c1,
    radical_value,
)
from .multipoly import MultiPolynomial, norm_resultant, sylvester_resultant, univariate_resultant
from .poly import ExactPolynomial, poly_gcd, square_free
from .sturm import (
    IsolatingInterval,
    SturmChain,
    count_in_open_interval_sqrt,
    isolate,
    isolate_and_refine,
    sturm_chain,
    sturm_count,
)

__all__ = [
    "DegreeMismatch",
    "EliminationResult",
    "ExactPolynomial",
    "IsolatingInterval",
    "MultiPolynomial",
    "SturmChain",
    "TARGETS",
    "TARGET_M2EQ1",
    "TARGET_M2M3",
    "count_in_open_interval_sqrt",
    "eliminate_radicals_c1",
    "isolate",
    "isolate_and_refine",
    "norm_resultant",
    "poly_gcd",
    "radical_value",
    "square_free",
    "sturm_chain",
    "sturm_count",
    "sylvester_resultant",
    "univariate_resultant",
]
