"""
Primal route: minimal-norm polynomial interpolants, a certified upper bound on I_X
"""

import math
from dataclasses import dataclass
from typing import List, Sequence

import cvxpy as cp
import numpy as np
import scipy.linalg
import structlog

from config import SolverOpts
from errors import DegreeTooSmallError, NoConvergenceError
from rational import Poly, hermite_interpolant, jets, node_polynomial
from spaces import SpaceFamily, x_norm_poly
from .conic import solve, weighted_norm_expr
from .problem import InterpolationProblem

logger = structlog.get_logger(__name__)

RESIDUAL_TOL = 1e-10
# circle samples per unit of degree in the H^inf program
HINF_OVERSAMPLING = 16


@dataclass(frozen=True)
class PrimalCertificate:
    """Feasible polynomial with value_upper = x_norm_poly(space, poly_star) >= I_X"""
    poly_star: Poly
    value_upper: float
    degree_used: int
    residual: float = 0.0


def _parameterization(problem: InterpolationProblem, degree: int):
    """(h, M): f = h + M u covers every interpolant of degree <= degree"""
    n = problem.n
    h = hermite_interpolant(problem.family, problem.targets).padded(degree + 1)
    m = node_polynomial(problem.family).array
    free = degree - n + 1
    if free == 0:
        return h, np.zeros((degree + 1, 0), dtype=complex)
    column = np.zeros(degree + 1, dtype=complex)
    column[: m.size] = m
    row = np.zeros(free, dtype=complex)
    row[0] = m[0]
    return h, scipy.linalg.toeplitz(column, row)


def _certificate(problem: InterpolationProblem, coeffs: np.ndarray, degree: int) -> PrimalCertificate:
    poly = Poly(coeffs)
    residual = float(np.max(np.abs(jets(problem.family, poly) - problem.targets)))
    if residual > RESIDUAL_TOL:
        logger.warning("primal_min.residual", residual=residual, degree=degree)
    return PrimalCertificate(poly, x_norm_poly(problem.space, poly), degree, residual)


def _solve_free(problem: InterpolationProblem, h: np.ndarray, M: np.ndarray, degree: int):
    """Coefficients u minimizing the X-norm of h + M u, or None if the solver failed"""
    space = problem.space
    free = M.shape[1]
    if space.family == SpaceFamily.HINFINITY:
        samples = HINF_OVERSAMPLING * max(degree, 1)
        theta = 2.0 * np.pi * np.arange(samples) / samples
        V = np.exp(1j * np.outer(theta, np.arange(degree + 1)))
        u = cp.Variable(free, complex=True)
        program = cp.Problem(cp.Minimize(cp.max(cp.abs(V @ h + (V @ M) @ u))))
        return u.value if solve(program, "primal_hinf") else None

    weights = space.weights(np.arange(degree + 1))
    if space.q == 2.0:
        sol, *_ = np.linalg.lstsq(weights[:, None] * M, -weights * h, rcond=None)
        return sol
    u = cp.Variable(free, complex=True)
    program = cp.Problem(cp.Minimize(weighted_norm_expr(weights, h + M @ u, space.q)))
    return u.value if solve(program, "primal") else None


def primal_min(problem: InterpolationProblem, degree: int, opts: SolverOpts) -> PrimalCertificate:
    """
    Minimize ‖h + m u‖_X over polynomials u of degree <= degree - n.

    h is the Hermite interpolant of the targets and m the node polynomial, so
    every candidate interpolates exactly. The returned value is the exact norm
    of the returned polynomial (for H^inf, a certified upper bound of it).
    """
    n = problem.n
    if degree < n - 1:
        raise DegreeTooSmallError(f"degree {degree} cannot meet {n} constraints")
    h, M = _parameterization(problem, degree)
    fallback = _certificate(problem, h, degree)
    if M.shape[1] == 0 or problem.is_zero():
        return fallback

    u = _solve_free(problem, h, M, degree)
    if u is None:
        raise NoConvergenceError(f"primal program failed at degree {degree}", best=fallback)
    cert = _certificate(problem, h + M @ np.asarray(u, dtype=complex), degree)
    if cert.value_upper > fallback.value_upper:
        cert = fallback
    logger.info("primal_min.done", space=problem.space.name, degree=degree,
                value_upper=cert.value_upper, residual=cert.residual)
    return cert


def primal_sweep(problem: InterpolationProblem, degrees: Sequence[int],
                 opts: SolverOpts) -> List[PrimalCertificate]:
    """Best-so-far certificates over increasing degrees (values never increase)"""
    best = None
    out = []
    for degree in sorted(degrees):
        try:
            cert = primal_min(problem, degree, opts)
        except NoConvergenceError as e:
            cert = e.best
        if best is None or cert.value_upper <= best.value_upper:
            best = cert
        out.append(best)
    return out


def relative_gap(primal_value: float, dual_value: float) -> float:
    """(primal - dual) / primal, zero when both vanish"""
    if primal_value == 0.0:
        return 0.0 if dual_value == 0.0 else math.inf
    return (primal_value - dual_value) / primal_value
