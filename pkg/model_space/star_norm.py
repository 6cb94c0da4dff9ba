"""
The norm |x|_* = ‖Σ x_j e_j‖_Y on Malmquist-Walsh coordinates and induced operator norms
"""

import math
from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np
import structlog

from config import SolverOpts
from errors import NoConvergenceError, UnsupportedSpaceError
from rational import CoeffStream, KernelFamily, malmquist_walsh, taylor_stream
from rational.stream import J_MAX
from solvers.search import projective_search, random_starts
from spaces import NormEnclosure, SpaceFamily, SpaceSpec, geometric_tail, weighted_norm
from tasks import RestartRunner, spawn_seeds
from .model_matrix import basis_windows

logger = structlog.get_logger(__name__)

STAR_J_START = 64


@dataclass(frozen=True)
class StarNorm:
    """
    Taylor windows c_0..c_J of every basis element e_j with the Y-norm bound
    of its coefficients past J.
    """
    family: KernelFamily
    space: SpaceSpec
    coeff_table: Tuple[CoeffStream, ...]
    windows: np.ndarray
    tails: np.ndarray

    @property
    def n(self) -> int:
        return self.windows.shape[0]

    @property
    def J(self) -> int:
        return self.windows.shape[1] - 1


@dataclass(frozen=True)
class OperatorNormEstimate:
    """lower is a certified lower bound; upper is certified unless heuristic"""
    lower: float
    upper: float
    heuristic: bool
    argmax: Optional[np.ndarray] = None


def _stream_tail(stream: CoeffStream, space: SpaceSpec, J: int) -> float:
    if stream.decay_amp == 0.0:
        return 0.0
    # (k+1)^m <= 2^m k^m for k >= 1
    log_amp = math.log(stream.decay_amp) + stream.poly_order * math.log(2.0)
    return geometric_tail(log_amp, stream.poly_order - space.beta, stream.decay_base, J, space.p)


def build_star_norm(family: KernelFamily, space: SpaceSpec, tol: float = 1e-10) -> StarNorm:
    """Coefficient table with the combined tail of all basis elements below tol"""
    if space.family == SpaceFamily.HINFINITY:
        raise UnsupportedSpaceError("H^inf uses Hardy2 coordinates")
    basis = malmquist_walsh(family)
    streams = tuple(taylor_stream(e, STAR_J_START) for e in basis)
    J = max(s.J for s in streams)
    while True:
        tails = np.array([_stream_tail(s, space, J) for s in streams])
        if np.sum(tails) <= tol:
            break
        J *= 2
        if J > J_MAX:
            raise NoConvergenceError(f"star-norm tails {np.sum(tails):.3e} above {tol:.3e} at J={J_MAX}")
    logger.debug("build_star_norm", space=space.name, n=len(basis), J=J)
    return StarNorm(family, space, streams, basis_windows(family, J), tails)


def star_norm_vector(sn: StarNorm, x) -> NormEnclosure:
    """Enclosure of |x|_*; exact Euclidean norm for H² (orthonormal basis)"""
    x = np.asarray(x, dtype=complex).ravel()
    if x.size != sn.n:
        raise ValueError(f"vector of length {x.size} for a {sn.n}-dimensional model space")
    if sn.space.family == SpaceFamily.HARDY2:
        value = float(np.linalg.norm(x))
        return NormEnclosure(value, value, sn.J + 1)
    ks = np.arange(sn.J + 1)
    head = weighted_norm(x @ sn.windows, sn.space.dual_weights(ks), sn.space.p)
    tail = float(np.abs(x) @ sn.tails)
    upper = max(head, tail) if math.isinf(sn.space.p) else head + tail
    return NormEnclosure(head, upper, sn.J + 1)


def _certified_ratio(sn: StarNorm, A: np.ndarray, x: np.ndarray) -> float:
    den = star_norm_vector(sn, x).upper
    return star_norm_vector(sn, A @ x).lower / den if den > 0 else 0.0


def star_operator_norm(sn: StarNorm, A, opts: SolverOpts) -> OperatorNormEstimate:
    """
    sup |A x|_* / |x|_*.

    Exact spectral norm for H². Otherwise the lower member is the best
    certified ratio over multi-start local search (canonical basis, top
    singular vector, eigenvectors, row-aligned unimodular vectors, and
    opts.restarts random starts when a seed is set) and the upper member is
    lower (1 + gap_slack), flagged heuristic.
    """
    A = np.asarray(A, dtype=complex)
    if A.shape != (sn.n, sn.n):
        raise ValueError(f"operator of shape {A.shape} on a {sn.n}-dimensional model space")
    if np.array_equal(A, np.eye(sn.n)):
        return OperatorNormEstimate(1.0, 1.0, False, np.eye(sn.n, dtype=complex)[0])
    if sn.space.family == SpaceFamily.HARDY2:
        value = float(np.linalg.norm(A, 2))
        return OperatorNormEstimate(value, value, False, np.linalg.svd(A)[2][0].conj())

    weights = sn.space.dual_weights(np.arange(sn.J + 1))
    W = sn.windows * weights[None, :]
    p = sn.space.p

    def head(v: np.ndarray) -> float:
        scaled = np.abs(v @ W)
        return float(np.max(scaled)) if math.isinf(p) else float(np.linalg.norm(scaled, ord=p))

    def ratio(x: np.ndarray) -> float:
        den = head(x)
        return head(A @ x) / den if den > 1e-300 else 0.0

    starts = list(np.eye(sn.n, dtype=complex))
    starts.append(np.linalg.svd(A)[2][0].conj())
    # eigenvectors reach the spectral radius; row-aligned phases suit sup-type norms
    starts.extend(np.linalg.eig(A)[1].T)
    starts.extend(np.exp(-1j * np.angle(A)))
    if opts.seed is not None:
        starts.extend(random_starts(spawn_seeds(opts.seed, opts.restarts), sn.n))
    runner = RestartRunner(opts.workers, label="star_operator_norm")
    results = runner.map(lambda s: projective_search(ratio, s, opts), starts)
    candidates = starts + [r.x for r in results]
    certified = [_certified_ratio(sn, A, x) for x in candidates]
    best = RestartRunner.best_index(certified, key=float)
    lower = certified[best]
    logger.info("star_operator_norm.done", space=sn.space.name, lower=lower, starts=len(starts))
    return OperatorNormEstimate(lower, lower * (1.0 + opts.gap_slack), True, candidates[best])
