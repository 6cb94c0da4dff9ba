"""
Conic programs over truncated coefficient sequences (cvxpy)
"""

import math
from typing import Optional

import cvxpy as cp
import numpy as np
import structlog

from .problem import InterpolationProblem

logger = structlog.get_logger(__name__)

_ACCEPTED = (cp.OPTIMAL, cp.OPTIMAL_INACCURATE)


def weighted_norm_expr(weights: np.ndarray, expr: cp.Expression, q: float) -> cp.Expression:
    """cvxpy expression for (Σ |w_k x_k|^q)^{1/q} over a complex affine x"""
    scaled = cp.abs(cp.multiply(weights, expr))
    if math.isinf(q):
        return cp.max(scaled)
    if q == 1.0:
        return cp.sum(scaled)
    return cp.pnorm(scaled, q)


def solve(problem: cp.Problem, label: str) -> bool:
    """Solve with the default solver; False on failure or an unusable status"""
    try:
        problem.solve()
    except cp.error.SolverError as e:
        logger.warning("conic.solver_error", program=label, error=str(e))
        return False
    if problem.status not in _ACCEPTED:
        logger.warning("conic.status", program=label, status=problem.status)
        return False
    return True


def truncated_dual_start(problem: InterpolationProblem, table: np.ndarray,
                         dual_weights: np.ndarray) -> Optional[np.ndarray]:
    """
    Maximizer of Re(w^H α) subject to the truncated weighted p-norm of
    Σ α_a k_a being at most 1.

    table holds the kernel coefficients 0..K row by row. The result only
    seeds the local search; its value is re-certified there.
    """
    alpha = cp.Variable(problem.n, complex=True)
    coeffs = table.T @ alpha
    objective = cp.Maximize(cp.real(np.conj(problem.targets) @ alpha))
    constraints = [weighted_norm_expr(dual_weights, coeffs, problem.space.p) <= 1.0]
    program = cp.Problem(objective, constraints)
    if not solve(program, "truncated_dual") or alpha.value is None:
        return None
    logger.debug("conic.truncated_dual", value=float(program.value), terms=table.shape[1])
    return np.asarray(alpha.value, dtype=complex)
