"""
Compressed shift, functions of matrices and norms on the model space K_λ
"""

from .model_matrix import (
    ModelMatrix,
    annihilation_residual,
    basis_windows,
    build_model_matrix,
    gram_oracle_matrix,
    model_matrix_entries,
    poly_of_matrix,
)
from .calculus import lift_to_polynomial, rational_of_matrix, rational_of_matrix_checked, spectrum_of
from .star_norm import (
    OperatorNormEstimate,
    StarNorm,
    build_star_norm,
    star_norm_vector,
    star_operator_norm,
)
from .hinf import hinf_interp_norm

__all__ = [
    "ModelMatrix",
    "annihilation_residual",
    "basis_windows",
    "build_model_matrix",
    "gram_oracle_matrix",
    "model_matrix_entries",
    "poly_of_matrix",
    "lift_to_polynomial",
    "rational_of_matrix",
    "rational_of_matrix_checked",
    "spectrum_of",
    "OperatorNormEstimate",
    "StarNorm",
    "build_star_norm",
    "star_norm_vector",
    "star_operator_norm",
    "hinf_interp_norm",
]
