"""
Pydantic models for problem files and command reports
"""

import math
from typing import Any, Dict, List, Literal, Optional, Tuple, Union

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator

from config import SolverOpts
from rational import KernelFamily, Node, Poly, RationalFn
from solvers import InterpolationProblem
from spaces import SpaceSpec

# complex numbers travel as [re, im]
Pair = Tuple[float, float]

SCHEMA_VERSION = 1


def to_pairs(values) -> List[Pair]:
    return [(float(np.real(v)), float(np.imag(v))) for v in np.asarray(values, dtype=complex).ravel()]


def from_pairs(pairs) -> np.ndarray:
    return np.array([complex(re, im) for re, im in pairs], dtype=complex)


class SpaceModel(BaseModel):
    """Tagged space record; q may be "inf" for ℓ^∞_A(β)"""
    family: str = Field(..., description="beurling_sobolev, wiener, hardy2 or hinfinity")
    q: Optional[Union[float, str]] = Field(None, description="Coefficient exponent")
    beta: Optional[float] = Field(None, description="Weight exponent")

    def to_spec(self) -> SpaceSpec:
        return SpaceSpec.from_dict(self.model_dump())

    @classmethod
    def from_spec(cls, spec: SpaceSpec) -> 'SpaceModel':
        q = "inf" if math.isinf(spec.q) else spec.q
        return cls(family=spec.family.value, q=q, beta=spec.beta)


class NodeModel(BaseModel):
    """Node with its jet targets f(λ), f'(λ), ..., f^{(m-1)}(λ)"""
    model_config = ConfigDict(populate_by_name=True)

    lam: Pair = Field(..., alias="lambda", description="Node as [re, im]")
    multiplicity: int = Field(1, ge=1, description="Number of derivative conditions")
    targets: List[Pair] = Field(default_factory=list, description="Jet targets as [re, im]")


class OptionsModel(BaseModel):
    """Solver options stored with the problem; CLI flags take precedence"""
    model_config = ConfigDict(extra="forbid")

    truncation_tol: Optional[float] = Field(None, gt=0)
    restarts: Optional[int] = Field(None, ge=1)
    seed: Optional[int] = None
    degree: Optional[int] = Field(None, ge=0)


class CalculusModel(BaseModel):
    """Functional calculus ‖g(T)‖ <= c ‖g‖_X and the induced norm it is checked in"""
    space: SpaceModel
    constant_c: float = Field(1.0, gt=0)
    norm: Literal["spectral", "rowsum", "colsum"] = "spectral"


class ProblemFile(BaseModel):
    """Versioned problem file accepted by every subcommand"""
    model_config = ConfigDict(extra="forbid")

    version: Literal[1] = Field(..., description="Schema version")
    space: SpaceModel
    nodes: List[NodeModel] = Field(default_factory=list)
    options: OptionsModel = Field(default_factory=OptionsModel)
    matrix: Optional[List[List[Pair]]] = Field(None, description="Square matrix, rows of [re, im]")
    minimal_polynomial: Optional[List[Pair]] = Field(None, description="Coefficients, lowest degree first")
    calculus: Optional[CalculusModel] = None

    @field_validator("matrix")
    @classmethod
    def _square(cls, rows):
        if rows is not None and any(len(row) != len(rows) for row in rows):
            raise ValueError("matrix must be square")
        return rows

    def family(self) -> KernelFamily:
        if not self.nodes:
            raise ValueError("the problem has no nodes")
        return KernelFamily([Node(complex(*node.lam), node.multiplicity) for node in self.nodes])

    def targets(self) -> np.ndarray:
        out = []
        for i, node in enumerate(self.nodes):
            if len(node.targets) != node.multiplicity:
                raise ValueError(f"node {i} has multiplicity {node.multiplicity} "
                                 f"but {len(node.targets)} targets")
            out.extend(node.targets)
        return from_pairs(out)

    def to_problem(self) -> InterpolationProblem:
        return InterpolationProblem(self.space.to_spec(), self.family(), self.targets())

    def matrix_array(self) -> Optional[np.ndarray]:
        if self.matrix is None:
            return None
        return np.array([[complex(re, im) for re, im in row] for row in self.matrix], dtype=complex)

    def minimal_poly(self) -> Optional[Poly]:
        return None if self.minimal_polynomial is None else Poly(from_pairs(self.minimal_polynomial))

    def calculus_or_default(self) -> CalculusModel:
        return self.calculus or CalculusModel(space=self.space)

    def solver_overrides(self) -> Dict[str, Any]:
        return self.options.model_dump()


class EffectiveOptions(BaseModel):
    """Options actually used, echoed in every report"""
    restarts: int
    tol: float
    max_iter: int
    seed: Optional[int]
    gap_slack: float
    truncation_tol: float
    workers: int
    degree: int

    @classmethod
    def from_opts(cls, opts: SolverOpts) -> 'EffectiveOptions':
        return cls(restarts=opts.restarts, tol=opts.tol, max_iter=opts.max_iter, seed=opts.seed,
                   gap_slack=opts.gap_slack, truncation_tol=opts.truncation_tol,
                   workers=opts.workers, degree=opts.degree)


class ErrorRecord(BaseModel):
    kind: str = Field(..., description="parse, validation, input, precondition, no_convergence or internal")
    message: str


class ErrorReport(BaseModel):
    command: str
    error: ErrorRecord


class NodeOut(BaseModel):
    model_config = ConfigDict(populate_by_name=True)

    lam: Pair = Field(..., alias="lambda")
    multiplicity: int

    @classmethod
    def from_pairs(cls, nodes) -> List['NodeOut']:
        return [cls(lam=to_pairs([lam])[0], multiplicity=int(k)) for lam, k in nodes]


class InterpNormReport(BaseModel):
    command: Literal["interp-norm"] = "interp-norm"
    status: str = "ok"
    space: SpaceModel
    n: int
    dual_lower: Optional[float]
    dual_upper: Optional[float]
    primal_upper: Optional[float]
    gap: Optional[float]
    alpha_star: List[Pair] = Field(default_factory=list)
    poly_star: List[Pair] = Field(default_factory=list)
    degree_used: Optional[int] = None
    residual: Optional[float] = None
    dual_starts: int = 0
    # sup-norm shift ratio, Wiener problems with simple nodes only
    shift_ratio: Optional[float] = None
    effective_options: EffectiveOptions
    runtime_ms: Optional[float] = None


class PickCheckReport(BaseModel):
    command: Literal["pick-check"] = "pick-check"
    status: str = "ok"
    space: SpaceModel
    C: float
    C_min: float
    psd_margin: float
    verdict: Literal["feasible", "infeasible"]
    effective_options: EffectiveOptions
    runtime_ms: Optional[float] = None


class InvariantChecks(BaseModel):
    lower_triangular: bool
    diagonal_matches_nodes: bool
    annihilation_residual: float
    gram_oracle_residual: float


class ModelMatrixReport(BaseModel):
    command: Literal["model-matrix"] = "model-matrix"
    status: str = "ok"
    n: int
    nodes: List[NodeOut]
    entries: List[List[Pair]]
    window_terms: int
    windows: List[List[Pair]]
    invariants: InvariantChecks
    effective_options: EffectiveOptions
    runtime_ms: Optional[float] = None


class PsiModel(BaseModel):
    num: List[Pair]
    den: List[Pair]


class MatrixBoundReport(BaseModel):
    command: Literal["matrix-bound"] = "matrix-bound"
    status: str = "ok"
    space: SpaceModel
    constant_c: float
    norm: str
    psi: PsiModel
    nodes: List[NodeOut]
    bound_lower: float
    bound_upper: float
    heuristic: bool
    actual: Optional[float] = None
    ratio: Optional[float] = None
    hypothesis: Optional[str] = None
    near_defective: bool = False
    discrepancy: float = 0.0
    effective_options: EffectiveOptions
    runtime_ms: Optional[float] = None


class HarnessSampleOut(BaseModel):
    index: int
    n: int
    actual: Optional[float]
    bound_upper: Optional[float]
    ratio: Optional[float]
    violated: bool


class BoundHarnessReport(BaseModel):
    command: Literal["bound-harness"] = "bound-harness"
    status: str = "ok"
    samples: int
    n_max: int
    norm: str
    psi: PsiModel
    violations: int
    max_ratio: Optional[float]
    results: List[HarnessSampleOut]
    effective_options: EffectiveOptions
    runtime_ms: Optional[float] = None


def psi_model(Psi: RationalFn) -> PsiModel:
    return PsiModel(num=to_pairs(Psi.num.coeffs), den=to_pairs(Psi.den.coeffs))
