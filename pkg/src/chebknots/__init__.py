"""Exact classification of Chebyshev knots C(a, b, c, phi) for a in {3, 4}."""

from .diagram import ChebParams, Classification, CriticalPhiError, classify, critical_poly
from .pipeline import EnumerationReport, enumerate_axis
from .twobridge import SchubertFraction, canonical, equivalent, identify

__all__ = [
    "ChebParams",
    "Classification",
    "CriticalPhiError",
    "EnumerationReport",
    "SchubertFraction",
    "canonical",
    "classify",
    "critical_poly",
    "enumerate_axis",
    "equivalent",
    "identify",
]
