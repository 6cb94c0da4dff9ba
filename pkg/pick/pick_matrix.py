"""
Pick criteria for H^∞ and H² as Hermitian generalized eigenproblems
"""

from dataclasses import dataclass
from typing import List, Sequence, Tuple

import numpy as np
import scipy.linalg
import structlog

from errors import DegenerateNodesError
from rational import KernelFamily
from spaces import check_conditioning, gram_h2

logger = structlog.get_logger(__name__)


@dataclass(frozen=True)
class PickReport:
    """
    Q_ij = 1/(1 - conj(λ_i) λ_j), B_ij = conj(w_i) w_j Q_ij, and C_min² the
    largest generalized eigenvalue of (B, Q).
    """
    C_min: float
    Q: np.ndarray
    B: np.ndarray

    def margin_matrix(self, C: float) -> np.ndarray:
        return C ** 2 * self.Q - self.B

    def psd_margin_at(self, C: float) -> float:
        """Smallest eigenvalue of C²Q - B"""
        return float(np.min(scipy.linalg.eigvalsh(self.margin_matrix(C))))

    def pick_matrix(self, C: float) -> np.ndarray:
        """Classical arrangement ((C² - w_i conj w_j)/(1 - λ_i conj λ_j))"""
        return np.conj(self.margin_matrix(C))

    def is_feasible(self, C: float, rtol: float = 1e-9) -> bool:
        return self.psd_margin_at(C) >= -rtol * float(np.linalg.norm(self.Q, 2))

    def margin_series(self, Cs: Sequence[float]) -> List[Tuple[float, float]]:
        return [(float(C), self.psd_margin_at(C)) for C in Cs]


def _require_simple(family: KernelFamily) -> np.ndarray:
    if not family.is_simple():
        raise DegenerateNodesError("Pick matrices need simple nodes; use hinf_interp_norm for jets")
    return family.expanded()


def szego_matrix(lams: np.ndarray) -> np.ndarray:
    return 1.0 / (1.0 - np.conj(lams)[:, None] * lams[None, :])


def pick_min_c_hinf(family: KernelFamily, w) -> PickReport:
    """
    Smallest C with C²Q - B positive semidefinite, via the congruence by the
    Cholesky factor of Q.
    """
    lams = _require_simple(family)
    w = np.asarray(w, dtype=complex).ravel()
    if w.size != lams.size:
        raise ValueError(f"{w.size} values for {lams.size} nodes")
    Q = szego_matrix(lams)
    B = np.conj(w)[:, None] * w[None, :] * Q
    check_conditioning(Q, "pick_Q")
    L = scipy.linalg.cholesky(Q, lower=True)
    X = scipy.linalg.solve_triangular(L, B, lower=True)
    S = scipy.linalg.solve_triangular(L, X.conj().T, lower=True)
    S = 0.5 * (S + S.conj().T)
    top = float(np.max(scipy.linalg.eigvalsh(S)))
    C_min = float(np.sqrt(max(top, 0.0)))
    logger.debug("pick_min_c_hinf", n=lams.size, C_min=C_min)
    return PickReport(C_min, Q, B)


def pick_min_c_h2(family: KernelFamily, w) -> float:
    """
    sqrt(w^H G^{-1} w) with G the H² Gram matrix of the kernels; for simple
    nodes this is sqrt(w̃^H Q^{-1} w̃) with w̃ = conj(w).
    """
    w = np.asarray(w, dtype=complex).ravel()
    if w.size != family.total_dim:
        raise ValueError(f"{w.size} values for a family of dimension {family.total_dim}")
    if not np.any(w):
        return 0.0
    G = gram_h2(family)
    factor = scipy.linalg.cho_factor(G, lower=True)
    value = float(np.real(np.vdot(w, scipy.linalg.cho_solve(factor, w))))
    return float(np.sqrt(max(value, 0.0)))


def pick_report_h2(family: KernelFamily, w) -> PickReport:
    """H² criterion in Pick form: C²G - w w^H is positive semidefinite iff C >= I_{H²}"""
    w = np.asarray(w, dtype=complex).ravel()
    C_min = pick_min_c_h2(family, w)
    G = gram_h2(family)
    return PickReport(C_min, G, np.outer(w, np.conj(w)))
