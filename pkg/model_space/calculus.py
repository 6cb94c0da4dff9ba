"""
Rational functions of matrices and the polynomial lifting of Ψ modulo m
"""

from typing import Tuple, Union

import numpy as np
import scipy.linalg
import structlog

from errors import InvariantViolationError, PoleOnSpectrumError
from rational import Poly, RationalFn
from .model_matrix import ModelMatrix, poly_of_matrix

logger = structlog.get_logger(__name__)

POLE_TOL = 1e-8
LIFT_TOL = 1e-10


def spectrum_of(A: np.ndarray) -> np.ndarray:
    """Eigenvalues; the diagonal for triangular input"""
    if np.all(np.triu(A, 1) == 0) or np.all(np.tril(A, -1) == 0):
        return np.diag(A).copy()
    return np.linalg.eigvals(A)


def rational_of_matrix_checked(Psi: RationalFn, M: Union[ModelMatrix, np.ndarray]) -> Tuple[np.ndarray, float]:
    """
    (q(M)^{-1} p(M), max |q(M)^{-1} p(M) - p(M) q(M)^{-1}|) by linear solves.
    """
    A = M.entries if isinstance(M, ModelMatrix) else np.asarray(M, dtype=complex)
    poles = Psi.poles()
    spectrum = spectrum_of(A)
    if poles.size and spectrum.size:
        gap = float(np.min(np.abs(poles[:, None] - spectrum[None, :])))
        if gap <= POLE_TOL:
            raise PoleOnSpectrumError(f"pole of Psi within {gap:.3e} of the spectrum")
    P = poly_of_matrix(Psi.num, A) if not Psi.num.is_zero() else np.zeros_like(A)
    Q = poly_of_matrix(Psi.den, A)
    lower = bool(np.all(np.triu(Q, 1) == 0))
    if lower or np.all(np.tril(Q, -1) == 0):
        left = scipy.linalg.solve_triangular(Q, P, lower=lower)
        right = scipy.linalg.solve_triangular(Q.T, P.T, lower=not lower).T
    else:
        left = scipy.linalg.solve(Q, P)
        right = scipy.linalg.solve(Q.T, P.T).T
    discrepancy = float(np.max(np.abs(left - right))) if A.size else 0.0
    if discrepancy > 1e-8 * max(1.0, float(np.max(np.abs(left)))):
        logger.warning("rational_of_matrix.discrepancy", discrepancy=discrepancy)
    return left, discrepancy


def rational_of_matrix(Psi: RationalFn, M: Union[ModelMatrix, np.ndarray]) -> np.ndarray:
    """Ψ(M) = q(M)^{-1} p(M); poles must stay off the spectrum"""
    return rational_of_matrix_checked(Psi, M)[0]


def lift_to_polynomial(Psi: RationalFn, m: Poly) -> Poly:
    """
    Polynomial g agreeing with Ψ = p/q at the roots of m to their
    multiplicities:

        g = p Π_i [(m(ξ_i) - m(z)) / (z - ξ_i)] / (lead(q) Π_i m(ξ_i))

    over the poles ξ_i of Ψ. Each factor is an exact polynomial division.
    """
    if Psi.is_polynomial():
        return Psi.as_poly()
    poles = Psi.poles()
    g = Psi.num * (1.0 / Psi.den.coeffs[-1])
    for xi in poles:
        m_xi = complex(m(xi))
        if abs(m_xi) <= LIFT_TOL:
            raise PoleOnSpectrumError(f"m vanishes at the pole {xi}")
        numerator = Poly.constant(m_xi) - m
        factor, remainder = numerator.divmod(Poly([-xi, 1.0]))
        if remainder.max_abs() > LIFT_TOL * max(1.0, numerator.max_abs()):
            raise InvariantViolationError(f"lifting division left remainder {remainder.max_abs():.3e}")
        g = g * factor * (1.0 / m_xi)
    return g
