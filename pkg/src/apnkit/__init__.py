"""Exact derivative-weight analysis of Boolean and vectorial Boolean functions."""

from .boolfun import (
    AnfPolynomial,
    BooleanFunction,
    Classification,
    LinearSpace,
    WalshSpectrum,
    classify,
    fwht,
)
from .gf2n import FieldContext
from .metrics import (
    PredicateOutcome,
    ScalarDerivativeProfile,
    VectorialDerivativeProfile,
    scalar_profile,
    vectorial_profile,
)
from .vectorial import DifferenceDistributionTable, VectorialFunction

__version__ = "0.1.0"

__all__ = [
    "AnfPolynomial",
    "BooleanFunction",
    "Classification",
    "DifferenceDistributionTable",
    "FieldContext",
    "LinearSpace",
    "PredicateOutcome",
    "ScalarDerivativeProfile",
    "VectorialDerivativeProfile",
    "VectorialFunction",
    "WalshSpectrum",
    "classify",
    "fwht",
    "scalar_profile",
    "vectorial_profile",
]
