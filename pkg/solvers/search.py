"""
Multi-start local maximization of scale-invariant ratios over ℂ^n
"""

from dataclasses import dataclass, field
from typing import Callable, List

import numpy as np
from scipy.optimize import minimize

from config import SolverOpts

# stationarity is judged over this trailing share of the objective history
STATIONARY_WINDOW = 0.2

Ratio = Callable[[np.ndarray], float]


@dataclass
class SearchResult:
    x: np.ndarray
    ratio: float
    converged: bool
    history: List[float] = field(default_factory=list)


def stationary(history: List[float], tol: float) -> bool:
    """Relative improvement of the best value below tol over the trailing window"""
    if len(history) < 10:
        return False
    early = history[int((1.0 - STATIONARY_WINDOW) * len(history))]
    late = history[-1]
    return abs(early - late) <= tol * max(abs(late), 1e-300)


def projective_search(ratio: Ratio, start: np.ndarray, opts: SolverOpts) -> SearchResult:
    """
    Nelder-Mead over the 2(n-1) real coordinates left after pinning the
    largest entry of x to 1; ratio must be invariant under complex scaling.
    """
    history: List[float] = []
    x = np.asarray(start, dtype=complex)
    converged = False
    for _ in range(2):  # second pass re-pins and restarts the simplex
        pivot = int(np.argmax(np.abs(x)))
        if x[pivot] == 0:
            return SearchResult(x, 0.0, True, history)
        base = x / x[pivot]
        free = np.array([a for a in range(x.size) if a != pivot], dtype=int)
        if free.size == 0:
            return SearchResult(base, ratio(base), True, history)
        m = free.size

        def unpack(v: np.ndarray, base=base, free=free, m=m) -> np.ndarray:
            out = base.copy()
            out[free] = v[:m] + 1j * v[m:]
            return out

        def objective(v: np.ndarray, unpack=unpack) -> float:
            value = -ratio(unpack(v))
            history.append(min(value, history[-1]) if history else value)
            return value

        v0 = np.concatenate([base[free].real, base[free].imag])
        res = minimize(objective, v0, method="Nelder-Mead",
                       options={"maxiter": opts.max_iter, "maxfev": opts.max_iter,
                                "xatol": 1e-10, "fatol": opts.tol * 1e-2, "adaptive": True})
        x = unpack(res.x)
        converged = bool(res.success) or stationary(history, opts.tol)
    return SearchResult(x, ratio(x), converged, history)


def random_starts(rng_seeds, n: int) -> List[np.ndarray]:
    starts = []
    for ss in rng_seeds:
        rng = np.random.default_rng(ss)
        starts.append(rng.standard_normal(n) + 1j * rng.standard_normal(n))
    return starts
