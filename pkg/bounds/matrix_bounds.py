"""
Functional-calculus bounds ‖Ψ(T)‖ <= c ‖Ψ(M̂_z)*‖_* and their check against matrices
"""

from dataclasses import dataclass, field
from enum import Enum
from typing import List, Optional, Tuple

import numpy as np
import structlog

from config import SolverOpts
from errors import (BoundViolationError, NotAContractionError, RootOnBoundaryError,
                    SpectrumOutsideDiskError)
from model_space import (build_model_matrix, build_star_norm, rational_of_matrix,
                         rational_of_matrix_checked, spectrum_of, star_operator_norm)
from rational import EPS_BOUNDARY, KernelFamily, Node, Poly, RationalFn
from spaces import SpaceFamily, SpaceSpec

logger = structlog.get_logger(__name__)

CLUSTER_TOL = 1e-8
RANK_TOL = 1e-8
# clusters closer than this are reported as near-defective
NEAR_DEFECTIVE = 1e-4
VIOLATION_TOL = 1e-9
CONTRACTION_TOL = 1e-12

VERIFIED = "verified"
UNVERIFIED = "unverified hypothesis"


class InducedNorm(str, Enum):
    SPECTRAL = "spectral"
    ROWSUM = "rowsum"
    COLSUM = "colsum"

    @property
    def ord(self):
        return {InducedNorm.SPECTRAL: 2, InducedNorm.ROWSUM: np.inf, InducedNorm.COLSUM: 1}[self]

    def of(self, A: np.ndarray) -> float:
        return float(np.linalg.norm(A, self.ord))


@dataclass(frozen=True)
class CalculusSpec:
    """‖g(T)‖ <= c ‖g‖_X for all polynomials g"""
    space: SpaceSpec
    constant_c: float = 1.0

    def __post_init__(self):
        if not self.constant_c > 0:
            raise ValueError("the calculus constant must be positive")


@dataclass(frozen=True)
class BoundReport:
    bound_lower: float
    bound_upper: float
    heuristic: bool
    nodes: List[Tuple[complex, int]] = field(default_factory=list)
    actual: Optional[float] = None
    ratio: Optional[float] = None
    hypothesis: Optional[str] = None
    near_defective: bool = False
    discrepancy: float = 0.0

    @property
    def bound(self) -> Tuple[float, float]:
        return self.bound_lower, self.bound_upper


def cluster_points(points: np.ndarray, tol: float = CLUSTER_TOL) -> List[Tuple[complex, int]]:
    """Single-linkage clusters as (mean, size), in order of first appearance"""
    points = np.asarray(points, dtype=complex)
    labels = -np.ones(points.size, dtype=int)
    count = 0
    for a in range(points.size):
        if labels[a] >= 0:
            continue
        labels[a] = count
        stack = [a]
        while stack:
            b = stack.pop()
            near = np.flatnonzero((np.abs(points - points[b]) <= tol) & (labels < 0))
            labels[near] = count
            stack.extend(near.tolist())
        count += 1
    clusters = []
    for c in range(count):
        members = points[labels == c]
        clusters.append((complex(np.mean(members)), int(members.size)))
    return clusters


def _near_defective(clusters: List[Tuple[complex, int]]) -> bool:
    centers = np.array([c for c, _ in clusters])
    if centers.size < 2:
        return False
    gaps = np.abs(centers[:, None] - centers[None, :])
    np.fill_diagonal(gaps, np.inf)
    return bool(np.min(gaps) < NEAR_DEFECTIVE)


def family_from_roots(m: Poly) -> Tuple[KernelFamily, bool]:
    """Nodes with multiplicities from the roots of m (all strictly inside the disk)"""
    if m.degree() < 1:
        raise ValueError("the minimal polynomial must have degree >= 1")
    roots = m.roots()
    if np.any(np.abs(roots) >= 1.0 - EPS_BOUNDARY):
        raise RootOnBoundaryError(f"root of modulus {np.max(np.abs(roots)):.12f} is not inside the disk")
    clusters = cluster_points(roots)
    near = _near_defective(clusters)
    if near:
        logger.warning("minimal_polynomial.near_defective", clusters=len(clusters))
    return KernelFamily([Node(c, k) for c, k in clusters]), near


def _star_space(calc: CalculusSpec) -> SpaceSpec:
    # H^inf bounds are computed in H² coordinates
    if calc.space.family == SpaceFamily.HINFINITY:
        return SpaceSpec.hardy2()
    return calc.space


def bound_on_family(family: KernelFamily, Psi: RationalFn, calc: CalculusSpec, opts: SolverOpts,
                    near_defective: bool = False) -> BoundReport:
    """c · ‖Ψ(M̂_z)*‖_* on the model space K_λ of the family"""
    M = build_model_matrix(family)
    PsiM, discrepancy = rational_of_matrix_checked(Psi, M)
    sn = build_star_norm(family, _star_space(calc), opts.truncation_tol)
    est = star_operator_norm(sn, PsiM.conj().T, opts)
    c = calc.constant_c
    nodes = [(node.lam, node.multiplicity) for node in family.nodes]
    logger.info("compute_bound.done", space=calc.space.name, lower=c * est.lower, heuristic=est.heuristic)
    return BoundReport(c * est.lower, c * est.upper, est.heuristic, nodes,
                       near_defective=near_defective, discrepancy=discrepancy)


def compute_bound(m: Poly, Psi: RationalFn, calc: CalculusSpec, opts: SolverOpts) -> BoundReport:
    """c · ‖Ψ(M̂_z)*‖_* on the model space of the roots of m"""
    family, near = family_from_roots(m)
    return bound_on_family(family, Psi, calc, opts, near)


def minimal_polynomial(M, tol: float = RANK_TOL) -> Tuple[Poly, List[Tuple[complex, int]]]:
    """
    Minimal polynomial from clustered eigenvalues; the exponent of each
    cluster is the first k where rank((M - μ)^k) reaches n - multiplicity.
    """
    M = np.asarray(M, dtype=complex)
    n = M.shape[0]
    clusters = cluster_points(spectrum_of(M), tol)
    factors = []
    for mu, mult in clusters:
        shifted = M - mu * np.eye(n)
        power = np.eye(n, dtype=complex)
        index = mult
        for k in range(1, mult + 1):
            power = power @ shifted
            scale = max(1.0, float(np.linalg.norm(shifted, 2)) ** k)
            if np.linalg.matrix_rank(power, tol=tol * scale) <= n - mult:
                index = k
                break
        factors.append((mu, index))
    roots = [mu for mu, k in factors for _ in range(k)]
    return Poly.from_roots(roots), factors


def _hypothesis(M: np.ndarray, norm_id: InducedNorm, calc: CalculusSpec) -> str:
    family = calc.space.family
    if family == SpaceFamily.WIENER:
        size = norm_id.of(M)
        if size > 1.0 + CONTRACTION_TOL:
            raise NotAContractionError(f"{norm_id.value} norm {size:.12f} exceeds 1")
        return VERIFIED if calc.constant_c >= 1.0 else UNVERIFIED
    if family in (SpaceFamily.HARDY2, SpaceFamily.HINFINITY):
        # von Neumann's inequality for spectral contractions
        contraction = np.linalg.norm(M, 2) <= 1.0 + CONTRACTION_TOL
        if norm_id == InducedNorm.SPECTRAL and contraction and calc.constant_c >= 1.0:
            return VERIFIED
    return UNVERIFIED


def verify_against_matrix(M, norm_id: InducedNorm, Psi: RationalFn, calc: CalculusSpec,
                          opts: SolverOpts) -> BoundReport:
    """
    Bound from the minimal polynomial of M, compared with ‖Ψ(M)‖ in the
    chosen induced norm. Raises BoundViolationError when the calculus
    hypothesis is verified and the bound fails.
    """
    M = np.asarray(M, dtype=complex)
    norm_id = InducedNorm(norm_id)
    spectrum = spectrum_of(M)
    if np.any(np.abs(spectrum) >= 1.0 - EPS_BOUNDARY):
        raise SpectrumOutsideDiskError(f"eigenvalue of modulus {np.max(np.abs(spectrum)):.12f}")
    hypothesis = _hypothesis(M, norm_id, calc)
    _, factors = minimal_polynomial(M)
    family = KernelFamily([Node(mu, k) for mu, k in factors])
    report = bound_on_family(family, Psi, calc, opts, _near_defective(factors))
    actual = norm_id.of(rational_of_matrix(Psi, M))
    ratio = actual / report.bound_upper if report.bound_upper > 0 else (0.0 if actual == 0 else np.inf)
    logger.info("verify_against_matrix", norm=norm_id.value, actual=actual,
                bound_upper=report.bound_upper, hypothesis=hypothesis)
    if hypothesis == VERIFIED and actual > report.bound_upper + VIOLATION_TOL:
        raise BoundViolationError(f"‖Ψ(M)‖ = {actual:.12g} exceeds the bound {report.bound_upper:.12g}")
    return BoundReport(report.bound_lower, report.bound_upper, report.heuristic, report.nodes,
                       actual, float(ratio), hypothesis, report.near_defective, report.discrepancy)
