"""Exact integer and rational polynomial algebra."""

from .poly import (
    BiPoly,
    MPoly,
    Poly,
    Rat,
    derivative,
    evaluate,
    interval_eval,
    poly_gcd,
    resultant,
    squarefree_part,
)
from .chebyshev import (
    ChainFactor,
    Curve,
    cheb_P,
    cheb_Q,
    cheb_T,
    factor_chain,
    p_on_curve,
    q_on_curve,
    substitute_curve,
)

gcd = poly_gcd

__all__ = [
    "BiPoly",
    "ChainFactor",
    "Curve",
    "MPoly",
    "Poly",
    "Rat",
    "cheb_P",
    "cheb_Q",
    "cheb_T",
    "derivative",
    "evaluate",
    "factor_chain",
    "gcd",
    "interval_eval",
    "p_on_curve",
    "poly_gcd",
    "q_on_curve",
    "resultant",
    "squarefree_part",
    "substitute_curve",
]
