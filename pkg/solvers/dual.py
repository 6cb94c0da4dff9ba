"""
Dual route: I_X(λ, w) as the norm of the functional Σ α_a k_a ↦ Σ α_a conj(w_a)
"""

import math
import warnings
from dataclasses import dataclass
from typing import Optional, Union

import numpy as np
import structlog

from config import SolverOpts
from errors import (DegenerateNodesError, IllConditionedWarning, NoConvergenceError,
                    UnsupportedSpaceError)
from rational import kernel_table
from spaces import KernelCombo, SpaceFamily, SpaceSpec, gram_h2, y_norm_combo
from tasks import RestartRunner, spawn_seeds
from .conic import truncated_dual_start
from .problem import InterpolationProblem
from .search import projective_search, random_starts

logger = structlog.get_logger(__name__)


@dataclass(frozen=True)
class DualCertificate:
    """
    α* with value_lower = |w^H α*| / upper(‖Σ α* k‖_Y), a valid lower bound
    on I_X, and value_upper = |w^H α*| / lower(‖Σ α* k‖_Y).
    """
    alpha_star: np.ndarray
    value_lower: float
    value_upper: float
    converged: bool = True
    starts: int = 1


@dataclass(frozen=True)
class NoViolationFound:
    """No α violating the inequality was found; this proves nothing"""
    best_ratio: float
    trials: int


@dataclass(frozen=True)
class ViolatedBy:
    """|w^H α| - C ‖Σ α k‖_Y = margin > 0 with the norm's upper member 1: proves I_X > C"""
    alpha: np.ndarray
    margin: float


FeasibilityVerdict = Union[NoViolationFound, ViolatedBy]


def certify(problem: InterpolationProblem, alpha: np.ndarray, tol: float) -> DualCertificate:
    """Certificate of a single α, gauge-fixed to w^H α >= 0 and upper norm 1"""
    alpha = np.asarray(alpha, dtype=complex)
    peak = np.max(np.abs(alpha))
    if peak == 0.0:
        return DualCertificate(alpha, 0.0, 0.0)
    # the truncation level then depends only on the direction of α
    alpha = alpha / peak
    enc = y_norm_combo(problem.space, KernelCombo(problem.family, alpha), tol)
    inner = np.vdot(problem.targets, alpha)
    if enc.upper == 0.0:
        return DualCertificate(alpha, 0.0, 0.0)
    phase = np.exp(-1j * np.angle(inner)) if inner != 0 else 1.0
    gauged = alpha * phase / enc.upper
    value = abs(inner)
    lower = value / enc.upper
    upper = value / enc.lower if enc.lower > 0 else math.inf
    return DualCertificate(gauged, lower, upper)


def hardy2_maximizer(problem: InterpolationProblem) -> np.ndarray:
    """α = G^{-1} w, the exact maximizer for H²"""
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", IllConditionedWarning)
        G = gram_h2(problem.family)
    return np.linalg.solve(G, problem.targets)


def _search_table(problem: InterpolationProblem, tol: float):
    """Kernel table and Y weights at a K whose tail is below tol for α = ones"""
    probe = y_norm_combo(problem.space, KernelCombo(problem.family, np.ones(problem.n)), tol)
    ks = np.arange(probe.terms)
    return kernel_table(problem.family, probe.terms - 1), problem.space.dual_weights(ks)


def _ratio_fn(problem: InterpolationProblem, table: np.ndarray, weights: np.ndarray):
    p = problem.space.p
    conj_w = np.conj(problem.targets)
    weighted = table * weights[None, :]

    def ratio(alpha: np.ndarray) -> float:
        scaled = np.abs(alpha @ weighted)
        norm = float(np.max(scaled)) if math.isinf(p) else float(np.linalg.norm(scaled, ord=p))
        if norm <= 1e-300:
            return 0.0
        return abs(complex(conj_w @ alpha)) / norm

    return ratio


def _starts(problem: InterpolationProblem, table, weights, count: int, seed: Optional[int]):
    starts = list(np.eye(problem.n, dtype=complex))
    starts.append(hardy2_maximizer(problem))
    conic = truncated_dual_start(problem, table, weights)
    if conic is not None:
        starts.append(conic)
    if count:
        starts.extend(random_starts(spawn_seeds(seed, count), problem.n))
    return starts


def dual_norm(problem: InterpolationProblem, opts: SolverOpts) -> DualCertificate:
    """
    Multi-start maximization of |w^H α| / ‖Σ α_a k_a‖_Y.

    Starts: the canonical basis, the H² maximizer, the truncated conic dual and
    opts.restarts seeded random vectors. Every start is certified with the
    sound side of the norm enclosure and the best certificate wins.
    """
    space = problem.space
    if space.family == SpaceFamily.HINFINITY:
        raise UnsupportedSpaceError("use pick_min_c_hinf or hinf_interp_norm for H^inf")
    tol = opts.truncation_tol
    if problem.is_zero():
        return DualCertificate(np.eye(problem.n, dtype=complex)[0], 0.0, 0.0)
    if space.family == SpaceFamily.HARDY2:
        cert = certify(problem, hardy2_maximizer(problem), tol)
        logger.info("dual_norm.closed_form", space=space.name, value_lower=cert.value_lower)
        return cert

    seed = opts.require_seed()
    table, weights = _search_table(problem, tol)
    ratio = _ratio_fn(problem, table, weights)
    starts = _starts(problem, table, weights, opts.restarts, seed)
    runner = RestartRunner(opts.workers, label="dual_norm")
    results = runner.map(lambda s: projective_search(ratio, s, opts), starts)

    certs = [certify(problem, r.x, tol) for r in results]
    best = certs[RestartRunner.best_index(certs, key=lambda c: c.value_lower)]
    converged = any(r.converged for r in results)
    cert = DualCertificate(best.alpha_star, best.value_lower,
                           max(best.value_upper, max(r.ratio for r in results)), converged, len(starts))
    logger.info("dual_norm.done", space=space.name, value_lower=cert.value_lower,
                value_upper=cert.value_upper, starts=len(starts), converged=converged)
    if not converged:
        raise NoConvergenceError("no start met the stationarity criterion", best=cert)
    return cert


def feasibility_check(problem: InterpolationProblem, C: float, trials: int, seed: int,
                      opts: Optional[SolverOpts] = None) -> FeasibilityVerdict:
    """
    Search for α with |w^H α| > C ‖Σ α k‖_Y.

    A ViolatedBy verdict proves I_X > C. NoViolationFound proves nothing.
    """
    if C < 0:
        raise ValueError("C must be >= 0")
    opts = (opts or SolverOpts()).with_overrides(seed=seed)
    tol = opts.truncation_tol
    table, weights = _search_table(problem, tol)
    ratio = _ratio_fn(problem, table, weights)
    starts = _starts(problem, table, weights, trials, seed)

    def verdict(alpha: np.ndarray) -> Optional[ViolatedBy]:
        cert = certify(problem, alpha, tol)
        if cert.value_lower > C:
            return ViolatedBy(cert.alpha_star, cert.value_lower - C)
        return None

    best_ratio = 0.0
    for start in starts:
        found = verdict(start)
        if found is not None:
            logger.info("feasibility_check.violated", C=C, margin=found.margin)
            return found
    runner = RestartRunner(opts.workers, label="feasibility_check")
    for result in runner.map(lambda s: projective_search(ratio, s, opts), starts):
        found = verdict(result.x)
        if found is not None:
            logger.info("feasibility_check.violated", C=C, margin=found.margin)
            return found
        best_ratio = max(best_ratio, result.ratio)
    return NoViolationFound(best_ratio, len(starts))


def wiener_shift_ratio(problem: InterpolationProblem, alpha: np.ndarray,
                       tol: float = 1e-10, terms: int = 2000) -> float:
    """
    sup_j |Σ α_i w_i λ_i^j| / sup_j |Σ α_i λ_i^j| for simple nodes; every
    value is a lower bound on I_W.
    """
    family = problem.family
    if not family.is_simple():
        raise DegenerateNodesError("the shift ratio is defined for simple nodes")
    alpha = np.asarray(alpha, dtype=complex)
    powers = family.expanded()[None, :] ** np.arange(terms)[:, None]
    numerator = float(np.max(np.abs(powers @ (alpha * problem.targets))))
    # Σ α_i λ_i^j is the conjugate of the coefficient sequence of Σ conj(α_i) k_{λ_i}
    denominator = y_norm_combo(SpaceSpec.wiener(), KernelCombo(family, np.conj(alpha)), tol).upper
    return numerator / denominator if denominator > 0 else 0.0
