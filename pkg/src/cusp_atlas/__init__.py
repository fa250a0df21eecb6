"""Arithmetic of cusp types in commensurability classes of arithmetic
hyperbolic 4-manifolds, computed exactly over Q."""

from .cusp import (
    CommensurabilityClass,
    CuspType,
    admits,
    class_of,
    class_with_bad_primes,
    classify,
    enumerate_avoiding,
    witness,
)
from .errors import ComputationError, CuspAtlasError
from .qform import (
    DiagonalForm,
    hasse_witt,
    hilbert_symbol,
    invariant_profile,
    projectively_equivalent,
    rationally_equivalent,
)

__version__ = "0.1.0"

__all__ = [
    "CommensurabilityClass",
    "ComputationError",
    "CuspAtlasError",
    "CuspType",
    "DiagonalForm",
    "admits",
    "class_of",
    "class_with_bad_primes",
    "classify",
    "enumerate_avoiding",
    "hasse_witt",
    "hilbert_symbol",
    "invariant_profile",
    "projectively_equivalent",
    "rationally_equivalent",
    "witness",
]
