"""
Interpolation nodes, the kernel family spanning K_λ and its Taylor coefficients
"""

from dataclasses import dataclass
from typing import List, Sequence, Tuple

import numpy as np
import scipy.linalg
from scipy.special import perm

from errors import BoundaryNodeError
from .poly import Poly

# nodes with |λ| >= 1 - EPS_BOUNDARY are rejected
EPS_BOUNDARY = 1e-9


def check_in_disk(lam: complex) -> complex:
    lam = complex(lam)
    if not np.isfinite(lam) or abs(lam) >= 1.0 - EPS_BOUNDARY:
        raise BoundaryNodeError(f"node {lam} is not inside the disk |z| < 1 - {EPS_BOUNDARY}")
    return lam


@dataclass(frozen=True)
class Node:
    """Interpolation node λ carrying multiplicity n_i"""
    lam: complex
    multiplicity: int = 1

    def __post_init__(self):
        object.__setattr__(self, "lam", check_in_disk(self.lam))
        if int(self.multiplicity) != self.multiplicity or self.multiplicity < 1:
            raise ValueError(f"multiplicity must be a positive integer, got {self.multiplicity}")
        object.__setattr__(self, "multiplicity", int(self.multiplicity))


@dataclass(frozen=True)
class KernelFamily:
    """
    The kernels k_{λ_i, j}, 0 <= j < n_i, spanning K_λ.

    Index pairs are ordered node-major with ascending derivative order, which
    is also the order of target vectors and coefficient vectors α.
    """
    nodes: Tuple[Node, ...]

    def __init__(self, nodes: Sequence[Node]):
        nodes = tuple(n if isinstance(n, Node) else Node(*n) for n in nodes)
        if not nodes:
            raise ValueError("a kernel family needs at least one node")
        lams = np.array([n.lam for n in nodes])
        for a in range(len(lams)):
            for b in range(a + 1, len(lams)):
                if lams[a] == lams[b]:
                    raise ValueError(f"node {lams[a]} listed twice; use its multiplicity instead")
        object.__setattr__(self, "nodes", nodes)

    @classmethod
    def simple(cls, lams: Sequence[complex]) -> 'KernelFamily':
        return cls([Node(l) for l in lams])

    @classmethod
    def at_zero(cls, n: int) -> 'KernelFamily':
        """Carathéodory-Schur family: one node at 0 of multiplicity n"""
        return cls([Node(0.0, n)])

    @property
    def total_dim(self) -> int:
        return sum(n.multiplicity for n in self.nodes)

    def index_pairs(self) -> List[Tuple[int, int]]:
        return [(i, j) for i, node in enumerate(self.nodes) for j in range(node.multiplicity)]

    def expanded(self) -> np.ndarray:
        """λ values repeated by multiplicity, in index order"""
        return np.array([node.lam for node in self.nodes for _ in range(node.multiplicity)], dtype=complex)

    def derivative_orders(self) -> np.ndarray:
        return np.array([j for _, j in self.index_pairs()], dtype=int)

    def is_simple(self) -> bool:
        return all(n.multiplicity == 1 for n in self.nodes)

    def max_modulus(self) -> float:
        return max(abs(n.lam) for n in self.nodes)


def kernel_coeffs(lam: complex, j: int, ks: np.ndarray) -> np.ndarray:
    """Taylor coefficients of k_{λ,j} at the indices ks (vectorized kernel_coeff)"""
    ks = np.asarray(ks)
    falling = perm(ks, j)  # k(k-1)...(k-j+1), zero for k < j
    powers = np.power(np.conj(complex(lam)), np.maximum(ks - j, 0))
    return falling * powers


def kernel_coeff(node_lambda: complex, deriv_order: int, k: int) -> complex:
    """k-th Taylor coefficient of (d/dλ̄)^j 1/(1 - λ̄z)"""
    if k < deriv_order:
        return 0j
    return complex(kernel_coeffs(node_lambda, deriv_order, np.array([k]))[0])


def kernel_table(family: KernelFamily, K: int) -> np.ndarray:
    """(n, K+1) array whose row a holds the coefficients 0..K of kernel a"""
    ks = np.arange(K + 1)
    return np.stack([kernel_coeffs(family.nodes[i].lam, j, ks) for i, j in family.index_pairs()])


def jets(family: KernelFamily, f: Poly) -> np.ndarray:
    """Vector of f^{(j)}(λ_i) in index order"""
    return np.array([complex(f.derivative(j)(family.nodes[i].lam)) if not f.is_zero() else 0j
                     for i, j in family.index_pairs()])


def node_polynomial(family: KernelFamily) -> Poly:
    """The monic polynomial Π (z - λ_i)^{n_i} annihilating the data"""
    return Poly.from_roots(family.expanded())


def hermite_interpolant(family: KernelFamily, targets: Sequence[complex]) -> Poly:
    """Unique polynomial of degree < n with f^{(j)}(λ_i) = targets[(i, j)]"""
    n = family.total_dim
    targets = np.asarray(targets, dtype=complex)
    if targets.shape != (n,):
        raise ValueError(f"expected {n} targets, got {targets.shape}")
    # row (i, j) pairs f̂ with conj(k_{λ_i, j}): f^{(j)}(λ_i) = Σ_k f̂(k) conj(kernel_coeff)
    vandermonde = np.conj(kernel_table(family, n - 1))
    return Poly(scipy.linalg.solve(vandermonde, targets))
