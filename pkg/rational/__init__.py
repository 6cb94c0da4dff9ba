"""
Polynomials, rational functions, kernels and Taylor-coefficient streams
"""

from .poly import Poly
from .rational_fn import RationalFn
from .kernels import (
    EPS_BOUNDARY,
    KernelFamily,
    Node,
    check_in_disk,
    hermite_interpolant,
    jets,
    kernel_coeff,
    kernel_coeffs,
    kernel_table,
    node_polynomial,
)
from .blaschke import blaschke_factor, blaschke_product, malmquist_walsh
from .stream import CoeffStream, recurrence_coeffs, taylor_stream

__all__ = [
    "Poly",
    "RationalFn",
    "Node",
    "KernelFamily",
    "EPS_BOUNDARY",
    "check_in_disk",
    "kernel_coeff",
    "kernel_coeffs",
    "kernel_table",
    "jets",
    "node_polynomial",
    "hermite_interpolant",
    "blaschke_factor",
    "blaschke_product",
    "malmquist_walsh",
    "CoeffStream",
    "recurrence_coeffs",
    "taylor_stream",
]
