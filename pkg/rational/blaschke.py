"""
Blaschke factors, finite Blaschke products and the Malmquist-Walsh basis of K_λ
"""

from typing import List

import numpy as np

from .kernels import KernelFamily, check_in_disk
from .poly import Poly
from .rational_fn import RationalFn


def blaschke_factor(lam: complex) -> RationalFn:
    """(z - λ) / (1 - λ̄ z)"""
    lam = check_in_disk(lam)
    return RationalFn(Poly([-lam, 1.0]), Poly([1.0, -np.conj(lam)]))


def blaschke_product(family: KernelFamily) -> RationalFn:
    """Π b_{λ_i}^{n_i}; unimodular on the circle with total_dim zeros in the disk"""
    num, den = Poly.constant(1.0), Poly.constant(1.0)
    for lam in family.expanded():
        factor = blaschke_factor(lam)
        num, den = num * factor.num, den * factor.den
    return RationalFn(num, den)


def malmquist_walsh(family: KernelFamily) -> List[RationalFn]:
    """
    Orthonormal basis e_1..e_n of K_λ:

        e_j = (1 - |λ_j|²)^{1/2} / (1 - λ̄_j z) · Π_{i<j} b_{λ_i}

    Repeated nodes are used verbatim in expanded order (confluent basis).
    """
    basis = []
    prefix_num, prefix_den = Poly.constant(1.0), Poly.constant(1.0)
    for lam in family.expanded():
        scale = np.sqrt(1.0 - abs(lam) ** 2)
        basis.append(RationalFn(prefix_num * scale, prefix_den * Poly([1.0, -np.conj(lam)])))
        prefix_num = prefix_num * Poly([-lam, 1.0])
        prefix_den = prefix_den * Poly([1.0, -np.conj(lam)])
    return basis
