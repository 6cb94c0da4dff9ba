"""
The compressed shift M̂_z on K_λ in the Malmquist-Walsh basis
"""

from dataclasses import dataclass

import numpy as np
import structlog

from errors import InvariantViolationError
from rational import KernelFamily, Poly, malmquist_walsh, node_polynomial, recurrence_coeffs

logger = structlog.get_logger(__name__)

ANNIHILATION_TOL = 1e-10


@dataclass(frozen=True)
class ModelMatrix:
    """Lower-triangular matrix of M_z|K_λ with the expanded nodes on the diagonal"""
    entries: np.ndarray
    family: KernelFamily

    @property
    def n(self) -> int:
        return self.entries.shape[0]

    @property
    def adjoint(self) -> np.ndarray:
        """Matrix of S*|K_λ in the same basis"""
        return self.entries.conj().T


def model_matrix_entries(family: KernelFamily) -> np.ndarray:
    """
    (M̂_z)_{ij} = 0 for i < j, λ_i for i = j and
    sqrt(1-|λ_i|²) sqrt(1-|λ_j|²) Π_{j<μ<i} (-conj λ_μ) for i > j.
    """
    lams = family.expanded()
    n = lams.size
    scales = np.sqrt(1.0 - np.abs(lams) ** 2)
    M = np.zeros((n, n), dtype=complex)
    for j in range(n):
        M[j, j] = lams[j]
        prod = 1.0 + 0j
        for i in range(j + 1, n):
            M[i, j] = scales[i] * scales[j] * prod
            prod *= -np.conj(lams[i])
    # normalizes -0.0 entries
    return M + (0.0 + 0.0j)


def poly_of_matrix(p: Poly, A: np.ndarray) -> np.ndarray:
    """p(A) by Horner's rule"""
    A = np.asarray(A, dtype=complex)
    out = np.zeros_like(A)
    identity = np.eye(A.shape[0], dtype=complex)
    for c in reversed(p.coeffs):
        out = out @ A + c * identity
    return out


def annihilation_residual(family: KernelFamily, M: np.ndarray) -> float:
    m = node_polynomial(family)
    return float(np.max(np.abs(poly_of_matrix(m, M)))) if M.size else 0.0


def build_model_matrix(family: KernelFamily) -> ModelMatrix:
    """M̂_z with its triangularity, diagonal and annihilation invariants checked"""
    M = model_matrix_entries(family)
    if np.any(np.triu(M, 1) != 0):
        raise InvariantViolationError("model matrix has entries above the diagonal")
    if np.any(np.diag(M) != family.expanded()):
        raise InvariantViolationError("model matrix diagonal differs from the nodes")
    residual = annihilation_residual(family, M)
    if residual > ANNIHILATION_TOL:
        raise InvariantViolationError(f"m(M̂_z) has entries of size {residual:.3e}")
    logger.debug("build_model_matrix", n=M.shape[0], annihilation=residual)
    return ModelMatrix(M, family)


def basis_windows(family: KernelFamily, J: int) -> np.ndarray:
    """(n, J+1) Taylor coefficients 0..J of the Malmquist-Walsh basis"""
    return np.stack([recurrence_coeffs(e, J + 1) for e in malmquist_walsh(family)])


def _oracle_terms(family: KernelFamily) -> int:
    r = family.max_modulus()
    if r == 0.0:
        return family.total_dim + 1
    # r^J (J+1)^n below double precision
    J = int(np.ceil(-40.0 / np.log10(r)))
    return min(max(J, 4 * family.total_dim), 200_000)


def gram_oracle_matrix(family: KernelFamily) -> np.ndarray:
    """⟨z e_j, e_i⟩_{H²} from truncated Taylor windows of the basis"""
    J = _oracle_terms(family)
    E = basis_windows(family, J)
    shifted = np.zeros_like(E)
    shifted[:, 1:] = E[:, :-1]
    return np.conj(E) @ shifted.T
