"""
Randomized soundness harness for the functional-calculus bounds
"""

from dataclasses import dataclass, field
from typing import List, Optional

import numpy as np
import structlog

from config import SolverOpts
from errors import BoundViolationError
from rational import Poly, RationalFn
from spaces import SpaceSpec
from tasks import RestartRunner, spawn_seeds
from .matrix_bounds import CalculusSpec, InducedNorm, verify_against_matrix

logger = structlog.get_logger(__name__)


@dataclass(frozen=True)
class HarnessSample:
    index: int
    n: int
    actual: float
    bound_upper: float
    ratio: float
    violated: bool


@dataclass(frozen=True)
class HarnessReport:
    samples: List[HarnessSample] = field(default_factory=list)

    @property
    def violations(self) -> int:
        return sum(s.violated for s in self.samples)

    @property
    def max_ratio(self) -> float:
        return max((s.ratio for s in self.samples), default=0.0)


def random_triangular_contraction(rng: np.random.Generator, n: int, radius: float = 0.9,
                                  min_modulus: float = 0.1) -> np.ndarray:
    """
    Upper-triangular matrix with row sums of moduli at most 1 and diagonal
    moduli in [min_modulus, radius].
    """
    diag = rng.uniform(min_modulus, radius, n) * np.exp(2j * np.pi * rng.uniform(0, 1, n))
    M = np.triu(rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n)), 1)
    for i in range(n - 1):
        row = np.sum(np.abs(M[i, i + 1:]))
        if row > 0:
            M[i, i + 1:] *= (1.0 - abs(diag[i])) * rng.uniform(0.0, 1.0) / row
    return M + np.diag(diag)


def run_bound_harness(samples: int, n_max: int, seed: int, opts: SolverOpts,
                      norm_id: InducedNorm = InducedNorm.ROWSUM,
                      Psi: Optional[RationalFn] = None, radius: float = 0.9) -> HarnessReport:
    """
    Check ‖Ψ(M)‖ against the Wiener bound (c = 1) on seeded random
    triangular contractions; Ψ defaults to 1/z.
    """
    Psi = Psi or RationalFn(Poly.constant(1.0), Poly.monomial(1))
    calc = CalculusSpec(SpaceSpec.wiener(), 1.0)
    seeds = spawn_seeds(seed, samples)

    def run(index: int) -> HarnessSample:
        rng = np.random.default_rng(seeds[index])
        n = int(rng.integers(1, n_max + 1))
        M = random_triangular_contraction(rng, n, radius)
        sample_opts = opts.with_overrides(seed=int(rng.integers(2 ** 31)), workers=1)
        try:
            report = verify_against_matrix(M, norm_id, Psi, calc, sample_opts)
        except BoundViolationError as e:
            logger.error("bound_harness.violation", index=index, n=n, error=str(e))
            return HarnessSample(index, n, np.nan, np.nan, np.inf, True)
        return HarnessSample(index, n, report.actual, report.bound_upper, report.ratio, False)

    results = RestartRunner(opts.workers, label="bound_harness").map(run, range(samples))
    report = HarnessReport(results)
    logger.info("bound_harness.done", samples=samples, violations=report.violations, max_ratio=report.max_ratio)
    return report
