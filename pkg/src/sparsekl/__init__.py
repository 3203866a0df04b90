"""Kazhdan-Lusztig polynomials of sparse paving matroids via skew tableaux."""
from ._jit import BACKEND
from .bounds import best_bound, coding_bound, johnson_bound, max_independent_set_exact, refined_bound
from .errors import DomainError, InvariantViolation, ResourceCapError, SparseKLError
from .exactmath import IntPolynomial, binomial
from .sparse_paving import (
    SparsePavingMatroid,
    characteristic_polynomial,
    kl_coefficient,
    kl_polynomial,
    validate,
)
from .tableaux import count_bar_skyt, count_skyt, enumerate_skyt

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "DomainError",
    "IntPolynomial",
    "InvariantViolation",
    "ResourceCapError",
    "SparseKLError",
    "SparsePavingMatroid",
    "best_bound",
    "binomial",
    "characteristic_polynomial",
    "coding_bound",
    "count_bar_skyt",
    "count_skyt",
    "enumerate_skyt",
    "johnson_bound",
    "kl_coefficient",
    "kl_polynomial",
    "max_independent_set_exact",
    "refined_bound",
    "validate",
]
