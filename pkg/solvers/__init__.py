"""
Dual and primal solvers for minimal-norm interpolation
"""

from .problem import InterpolationProblem
from .dual import (
    DualCertificate,
    FeasibilityVerdict,
    NoViolationFound,
    ViolatedBy,
    certify,
    dual_norm,
    feasibility_check,
    hardy2_maximizer,
    wiener_shift_ratio,
)
from .primal import PrimalCertificate, primal_min, primal_sweep, relative_gap
from .conic import truncated_dual_start
from .search import SearchResult, projective_search

__all__ = [
    "InterpolationProblem",
    "DualCertificate",
    "FeasibilityVerdict",
    "NoViolationFound",
    "ViolatedBy",
    "certify",
    "dual_norm",
    "feasibility_check",
    "hardy2_maximizer",
    "wiener_shift_ratio",
    "PrimalCertificate",
    "primal_min",
    "primal_sweep",
    "relative_gap",
    "truncated_dual_start",
    "SearchResult",
    "projective_search",
]
