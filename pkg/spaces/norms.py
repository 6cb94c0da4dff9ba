"""
X-norms of polynomials and certified Y-norm enclosures of kernel combinations
"""

import math
from dataclasses import dataclass

import numpy as np
import structlog
from scipy.optimize import minimize_scalar

from errors import NoConvergenceError, UnsupportedSpaceError
from rational import KernelFamily, Poly, kernel_table
from .space_spec import SpaceFamily, SpaceSpec

logger = structlog.get_logger(__name__)

K_MAX = 1_000_000
K_START = 32
HINF_TOL = 1e-8
HINF_MAX_GRID = 2 ** 24


@dataclass(frozen=True)
class NormEnclosure:
    """Interval [lower, upper] known to contain a norm"""
    lower: float
    upper: float
    terms: int = 0

    @property
    def midpoint(self) -> float:
        return 0.5 * (self.lower + self.upper)

    @property
    def width(self) -> float:
        return self.upper - self.lower

    def contains(self, value: float, slack: float = 0.0) -> bool:
        return self.lower - slack <= value <= self.upper + slack

    def scaled(self, c: float) -> 'NormEnclosure':
        return NormEnclosure(self.lower * c, self.upper * c, self.terms)


@dataclass(frozen=True)
class KernelCombo:
    """Σ α_{i,j} k_{λ_i, j} with α in the family's index order"""
    family: KernelFamily
    alpha: np.ndarray

    def __post_init__(self):
        alpha = np.asarray(self.alpha, dtype=complex).ravel()
        if alpha.size != self.family.total_dim:
            raise ValueError(f"alpha has length {alpha.size}, family dimension is {self.family.total_dim}")
        object.__setattr__(self, "alpha", alpha)

    def coefficients(self, K: int) -> np.ndarray:
        """Taylor coefficients 0..K of the combination"""
        return self.alpha @ kernel_table(self.family, K)

    def scaled(self, c: complex) -> 'KernelCombo':
        return KernelCombo(self.family, c * self.alpha)

    def __add__(self, other: 'KernelCombo') -> 'KernelCombo':
        if other.family != self.family:
            raise ValueError("combos over different kernel families")
        return KernelCombo(self.family, self.alpha + other.alpha)


def weighted_norm(values: np.ndarray, weights: np.ndarray, q: float) -> float:
    """(Σ |w_k v_k|^q)^{1/q}, or the max for q = ∞"""
    scaled = np.abs(weights * values)
    if scaled.size == 0:
        return 0.0
    if math.isinf(q):
        return float(np.max(scaled))
    return float(np.linalg.norm(scaled, ord=q))


def pairing(f: Poly, combo: KernelCombo) -> complex:
    """Cauchy pairing ⟨f, g⟩ = Σ f̂(k) conj(ĝ(k))"""
    if f.is_zero():
        return 0j
    return complex(np.dot(f.array, np.conj(combo.coefficients(f.degree()))))


def hinf_norm_enclosure(f: Poly, tol: float = HINF_TOL) -> NormEnclosure:
    """
    Enclosure of sup_{|z|=1} |f(z)|.

    |f|² is a trigonometric polynomial of degree D = deg f, so by Bernstein's
    inequality its maximum M and its maximum M_s over N equispaced samples
    satisfy M_s >= M (1 - D²π²/(2N²)). N is chosen so the enclosure width is
    below tol; the lower member is refined by local maximization.
    """
    if f.is_zero():
        return NormEnclosure(0.0, 0.0)
    D = f.degree()
    if D == 0:
        value = abs(f.coeffs[0])
        return NormEnclosure(value, value)

    coarse = _sampled_max(f, _grid_size(16 * (D + 1)))[0]
    delta = min(0.5, tol / max(coarse, tol))
    N = min(_grid_size(D * math.pi / math.sqrt(2.0 * delta)), HINF_MAX_GRID)
    sampled, theta = _sampled_max(f, N)
    defect = 1.0 - (D * math.pi / N) ** 2 / 2.0
    upper = sampled / math.sqrt(defect)

    h = 2.0 * math.pi / N
    res = minimize_scalar(lambda t: -abs(f(np.exp(1j * t))), bounds=(theta - h, theta + h),
                          method="bounded", options={"xatol": 1e-14})
    lower = max(sampled, float(-res.fun))
    if upper - lower > tol:
        logger.warning("hinf_norm_enclosure.wide", degree=D, grid=N, width=upper - lower)
    return NormEnclosure(lower, max(upper, lower), N)


def _grid_size(n: float) -> int:
    return 1 << max(4, int(math.ceil(math.log2(max(n, 2.0)))))


def _sampled_max(f: Poly, N: int):
    # fft of the padded coefficients samples f at e^{-2πi n/N}
    values = np.abs(np.fft.fft(f.padded(N)))
    idx = int(np.argmax(values))
    return float(values[idx]), -2.0 * math.pi * idx / N


def x_norm_poly(space: SpaceSpec, f: Poly) -> float:
    """
    ‖f‖_X. Exact for coefficient spaces; for H^∞ the upper member of
    hinf_norm_enclosure, which is a true upper bound within 1e-8 of the sup.
    """
    if space.family == SpaceFamily.HINFINITY:
        return hinf_norm_enclosure(f).upper
    if f.is_zero():
        return 0.0
    ks = np.arange(f.degree() + 1)
    return weighted_norm(f.array, space.weights(ks), space.q)


def geometric_tail(log_amp: float, exponent: float, base: float, K: int, p: float) -> float:
    """
    Upper bound on ‖(t_k)_{k>K}‖_p for t_k = e^{log_amp} k^exponent base^k.

    Past K+1 the ratio t_{k+1}/t_k is at most ((K+2)/(K+1))^{max(exponent, 0)} base,
    which bounds the tail by a geometric series (or by t_{K+1} for p = ∞).
    """
    if base == 0.0 or log_amp == -math.inf:
        return 0.0
    k1 = K + 1
    log_first = log_amp + exponent * math.log(k1) + k1 * math.log(base)
    if math.isinf(p):
        ratio = ((k1 + 1) / k1) ** max(exponent, 0.0) * base
        return math.exp(log_first) if ratio <= 1.0 else math.inf
    ratio = ((k1 + 1) / k1) ** max(exponent * p, 0.0) * base ** p
    if ratio >= 1.0:
        return math.inf
    return math.exp(log_first) / (1.0 - ratio) ** (1.0 / p)


def _tail_bound(space: SpaceSpec, combo: KernelCombo, K: int) -> float:
    """
    Upper bound on the Y-norm of the coefficients k > K of the combination,
    summed term by term over kernels with |coeff_k(k_{λ,j})| <= k^j |λ|^{k-j}.
    """
    total = 0.0
    lams = np.abs(combo.family.expanded())
    for a_abs, lam, j in zip(np.abs(combo.alpha), lams, combo.family.derivative_orders()):
        if a_abs == 0.0 or lam == 0.0:
            # k_{0,j} = j! z^j has no coefficients past j <= K
            continue
        log_amp = math.log(a_abs) - j * math.log(lam)
        total += geometric_tail(log_amp, j - space.beta, lam, K, space.p)
    return total


def y_norm_combo(space: SpaceSpec, combo: KernelCombo, tol: float) -> NormEnclosure:
    """
    Enclosure of ‖Σ α_{i,j} k_{λ_i,j}‖_Y of width <= tol.

    Y = ℓ^p_A(-β). The series is cut at K, doubled from max(j_max, 32) until
    the tail bound drops below tol; lower = head norm, upper = head + tail.
    """
    if space.family == SpaceFamily.HINFINITY:
        raise UnsupportedSpaceError("the H^inf predual has no coefficient formula; use the Pick or model-matrix route")
    if tol <= 0:
        raise ValueError("tol must be positive")
    jmax = int(np.max(combo.family.derivative_orders()))
    K = max(jmax, K_START)
    tail = _tail_bound(space, combo, K)
    while tail > tol:
        K *= 2
        if K > K_MAX:
            raise NoConvergenceError(f"tail bound {tail:.3e} above tol {tol:.3e} at K={K_MAX}")
        tail = _tail_bound(space, combo, K)

    ks = np.arange(K + 1)
    head = weighted_norm(combo.coefficients(K), space.dual_weights(ks), space.p)
    upper = max(head, tail) if math.isinf(space.p) else head + tail
    return NormEnclosure(head, upper, K + 1)


def y_norm_brute(space: SpaceSpec, combo: KernelCombo, K: int) -> float:
    """Plain truncation of the Y-norm at K terms (no tail)"""
    ks = np.arange(K + 1)
    return weighted_norm(combo.coefficients(K), space.dual_weights(ks), space.p)

