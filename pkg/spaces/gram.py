"""
Gram matrix of the kernel family in H²
"""

import warnings

import numpy as np
import structlog
from scipy.special import comb, factorial, perm, poch

from errors import IllConditionedWarning
from rational import KernelFamily

logger = structlog.get_logger(__name__)

COND_LIMIT = 1e12


def _kernel_inner(x: complex, j: int, y: complex, jp: int) -> complex:
    """
    ∂_x^j ∂_y^{j'} 1/(1 - xy), i.e. Σ_k (k)_j (k)_{j'} x^{k-j} y^{k-j'}
    """
    one_minus = 1.0 - x * y
    total = 0j
    for s in range(min(j, jp) + 1):
        total += (comb(j, s) * perm(jp, s) * x ** (jp - s) * poch(jp + 1, j - s)
                  * y ** (j - s) * one_minus ** (-(jp + 1 + j - s)))
    return factorial(jp, exact=True) * total


def check_conditioning(matrix: np.ndarray, label: str) -> float:
    """Condition estimate of a Hermitian matrix, warning past 1e12"""
    cond = float(np.linalg.cond(matrix))
    if not np.isfinite(cond) or cond > COND_LIMIT:
        logger.warning("ill_conditioned", matrix=label, cond=cond)
        warnings.warn(f"{label} condition estimate {cond:.3e} exceeds {COND_LIMIT:.0e}",
                      IllConditionedWarning, stacklevel=3)
    return cond


def gram_h2(family: KernelFamily) -> np.ndarray:
    """
    G[a, b] = ⟨k_b, k_a⟩_{H²}, so that ‖Σ α_a k_a‖² = α^H G α.

    Entries differentiate 1/(1 - λ_a conj(λ_b)) j_a times in λ_a and j_b
    times in conj(λ_b).
    """
    pairs = family.index_pairs()
    n = len(pairs)
    G = np.empty((n, n), dtype=complex)
    for a, (ia, ja) in enumerate(pairs):
        for b, (ib, jb) in enumerate(pairs):
            G[a, b] = _kernel_inner(family.nodes[ia].lam, ja, np.conj(family.nodes[ib].lam), jb)
    G = 0.5 * (G + G.conj().T)
    check_conditioning(G, "gram_h2")
    return G
