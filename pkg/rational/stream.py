"""
Taylor-coefficient windows of rational functions with certified tail majorants
"""

import math
from dataclasses import dataclass

import numpy as np
import structlog
from scipy.signal import lfilter

from errors import NoConvergenceError, PoleInDiskError
from .kernels import EPS_BOUNDARY
from .rational_fn import RationalFn

logger = structlog.get_logger(__name__)

VALIDATION_BAND = 50
J_MAX = 100_000
POLE_CLUSTER_TOL = 1e-6
# band entries below this fraction of max |c_k| are recurrence round-off
UNDERFLOW = 1e-280
# share of the log 2 amplitude headroom a still-rising ratio may use
RISE_SHARE = 0.25


@dataclass(frozen=True)
class CoeffStream:
    """
    Coefficients c_0..c_J and a majorant |c_k| <= A (k+1)^m r^k for k > J.
    """
    window: np.ndarray
    decay_base: float
    decay_amp: float
    poly_order: int

    @property
    def J(self) -> int:
        return self.window.size - 1

    def majorant(self, k) -> np.ndarray:
        k = np.asarray(k, dtype=float)
        if self.decay_amp == 0.0:
            return np.zeros_like(k)
        return self.decay_amp * (k + 1.0) ** self.poly_order * self.decay_base ** k


def recurrence_coeffs(f: RationalFn, count: int) -> np.ndarray:
    """c_0..c_{count-1} from c_k = (p_k - Σ_{t>=1} d_t c_{k-t}) / d_0"""
    impulse = np.zeros(count, dtype=complex)
    impulse[0] = 1.0
    num = f.num.array if not f.num.is_zero() else np.zeros(1, dtype=complex)
    return lfilter(num, f.den.array, impulse)


def _pole_profile(f: RationalFn):
    """(r, m): largest reciprocal pole modulus and max multiplicity - 1"""
    poles = f.poles()
    if poles.size == 0:
        return 0.0, 0
    moduli = np.abs(poles)
    if np.min(moduli) <= 1.0 + EPS_BOUNDARY:
        raise PoleInDiskError(f"pole of modulus {np.min(moduli):.3e} in the closed disk")
    mult = 1
    for a in range(poles.size):
        close = np.abs(poles - poles[a]) <= POLE_CLUSTER_TOL * max(1.0, moduli[a])
        mult = max(mult, int(np.count_nonzero(close)))
    return float(1.0 / np.min(moduli)), mult - 1


def taylor_stream(f: RationalFn, J: int) -> CoeffStream:
    """
    Window c_0..c_J of f with a majorant certified on a validation band.

    The amplitude is twice the largest ratio |c_k| / ((k+1)^m r^k) over
    J < k <= J + 50. Band entries below UNDERFLOW relative to the largest
    coefficient are ignored. J is doubled while the ratio still rises over
    the last half of the band by more than the extrapolated rise to k = ∞
    can absorb inside the factor 2.
    """
    r, m = _pole_profile(f)
    J = max(int(J), 0)
    if r == 0.0:
        # polynomial: exact once the window covers the degree
        J = max(J, f.num.degree() - f.den.degree())
        return CoeffStream(recurrence_coeffs(f, J + 1), 0.0, 0.0, 0)

    V = VALIDATION_BAND
    while True:
        coeffs = recurrence_coeffs(f, J + V + 1)
        moduli = np.abs(coeffs)
        floor = UNDERFLOW * max(float(np.max(moduli)), np.finfo(float).tiny)
        band = moduli[J + 1:]
        ks = np.arange(J + 1, J + V + 1, dtype=float)
        log_ratios = np.full(V, -np.inf)
        live = band > floor
        log_ratios[live] = np.log(band[live]) - m * np.log(ks[live] + 1.0) - ks[live] * np.log(r)
        if not np.any(live):
            # the band sits below double precision relative to the window
            logger.debug("taylor_stream.underflow", J=J, decay_base=r, poly_order=m)
            return CoeffStream(coeffs[:J + 1], r, 0.0, m)
        tail = log_ratios[V // 2:]
        half = tail.size // 2
        early, late = np.max(tail[:half]), np.max(tail[half:])
        if not np.isfinite(late):
            rise = -np.inf
        else:
            rise = late - early if np.isfinite(early) else np.inf
        # a rise decaying like 1/k^2 adds about rise * k / half more up to k = ∞
        if rise <= RISE_SHARE * math.log(2.0) * half / (J + V):
            amp = 2.0 * float(np.exp(np.max(log_ratios)))
            logger.debug("taylor_stream.certified", J=J, decay_base=r, poly_order=m, decay_amp=amp)
            return CoeffStream(coeffs[:J + 1], r, amp, m)
        if J >= J_MAX:
            raise NoConvergenceError(f"tail ratio still growing at J={J}")
        J = max(2 * J, V)
