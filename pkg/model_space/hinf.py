"""
H^∞ interpolation norm through the compressed shift
"""

import numpy as np

from rational import KernelFamily, hermite_interpolant
from .model_matrix import build_model_matrix, poly_of_matrix


def hinf_interp_norm(family: KernelFamily, targets) -> float:
    """‖g(M̂_z)‖_2 for the Hermite interpolant g of the targets; equals I_{H^∞}"""
    g = hermite_interpolant(family, targets)
    M = build_model_matrix(family)
    return float(np.linalg.norm(poly_of_matrix(g, M.entries), 2))
