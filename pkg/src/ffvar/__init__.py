"""Variance of arithmetic functions in short intervals over F_q[T].

Exact factorization-Fourier expansions, large-q variance predictions, exhaustive
empirical checks, and Dirichlet-character/L-function verification.
"""
from .arith import (
    FactorizationFunction,
    FourierExpansion,
    closed_form_expansion,
    convolve,
    fourier_coefficients,
    named,
    parse_function,
    truncated_mobius_sum,
)
from .ffpoly import FieldSpec, Poly, factor, irreducibles
from .harness import empirical_covariance, empirical_moment, empirical_variance
from .predictor import ik_count, predict_covariance, predict_variance

__version__ = "0.1.0"

__all__ = [
    "FactorizationFunction", "FourierExpansion", "FieldSpec", "Poly",
    "closed_form_expansion", "convolve", "empirical_covariance", "empirical_moment",
    "empirical_variance", "factor", "fourier_coefficients", "ik_count", "irreducibles",
    "named", "parse_function", "predict_covariance", "predict_variance", "truncated_mobius_sum",
]
