"""
Functional-calculus bounds for matrices
"""

from .matrix_bounds import (
    UNVERIFIED,
    VERIFIED,
    BoundReport,
    CalculusSpec,
    InducedNorm,
    bound_on_family,
    cluster_points,
    compute_bound,
    family_from_roots,
    minimal_polynomial,
    verify_against_matrix,
)
from .harness import HarnessReport, HarnessSample, random_triangular_contraction, run_bound_harness

__all__ = [
    "UNVERIFIED",
    "VERIFIED",
    "BoundReport",
    "CalculusSpec",
    "InducedNorm",
    "bound_on_family",
    "cluster_points",
    "compute_bound",
    "family_from_roots",
    "minimal_polynomial",
    "verify_against_matrix",
    "HarnessReport",
    "HarnessSample",
    "random_triangular_contraction",
    "run_bound_harness",
]
