"""
Command-line front end: problem files in, deterministic JSON reports out
"""

import functools
import json
import time
from dataclasses import replace
from pathlib import Path
from typing import Any, Callable, Optional, Tuple

import click
import numpy as np
import structlog
import yaml
from pydantic import BaseModel, ValidationError

from bounds import (CalculusSpec, InducedNorm, bound_on_family, compute_bound, run_bound_harness,
                    verify_against_matrix)
from config import Config, SolverOpts, configure_logging
from errors import InterpolationError, MathematicalPreconditionError, NoConvergenceError
from model_space import (annihilation_residual, basis_windows, build_model_matrix, gram_oracle_matrix,
                         hinf_interp_norm)
from pick import pick_min_c_hinf, pick_report_h2
from rational import Poly, RationalFn
from reports import (BoundHarnessReport, EffectiveOptions, ErrorRecord, ErrorReport, HarnessSampleOut,
                     InterpNormReport, InvariantChecks, MatrixBoundReport, ModelMatrixReport, NodeOut,
                     PickCheckReport, ProblemFile, SpaceModel, psi_model, to_pairs, write_report,
                     write_series)
from solvers import dual_norm, primal_min, primal_sweep, relative_gap, wiener_shift_ratio
from spaces import SpaceFamily

logger = structlog.get_logger(__name__)

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_NO_CONVERGENCE = 2
EXIT_PRECONDITION = 3

NO_CONVERGENCE = "no_convergence"
SWEEP_POINTS = 12
MARGIN_POINTS = 41


class CommandError(Exception):
    """Failure carrying its error-record kind and exit code"""

    def __init__(self, kind: str, message: str, code: int):
        super().__init__(message)
        self.kind = kind
        self.code = code


def classify(error: Exception) -> Tuple[str, int]:
    """(error.kind, exit code) of an exception raised while running a command"""
    if isinstance(error, CommandError):
        return error.kind, error.code
    if isinstance(error, (json.JSONDecodeError, yaml.YAMLError)):
        return "parse", EXIT_INPUT
    if isinstance(error, ValidationError):
        return "validation", EXIT_INPUT
    if isinstance(error, NoConvergenceError):
        return NO_CONVERGENCE, EXIT_NO_CONVERGENCE
    if isinstance(error, MathematicalPreconditionError):
        return "precondition", EXIT_PRECONDITION
    if isinstance(error, (InterpolationError, ValueError, OSError)):
        return "input", EXIT_INPUT
    return "internal", EXIT_INPUT


def parse_coeffs(text: str) -> np.ndarray:
    """JSON list of numbers or [re, im] pairs, lowest degree first"""
    values = json.loads(text)
    if not isinstance(values, list) or not values:
        raise ValueError(f"expected a non-empty coefficient list, got {text!r}")
    return np.array([complex(*v) if isinstance(v, list) else complex(v) for v in values], dtype=complex)


def parse_psi(text: Optional[str]) -> RationalFn:
    """Ψ from "p/q" with p and q coefficient lists; defaults to the identity z"""
    if not text:
        return RationalFn.from_poly(Poly.monomial(1))
    depth = 0
    for i, ch in enumerate(text):
        if ch == "[":
            depth += 1
        elif ch == "]":
            depth -= 1
        elif ch == "/" and depth == 0:
            return RationalFn.from_coeffs(parse_coeffs(text[:i]), parse_coeffs(text[i + 1:]))
    return RationalFn.from_coeffs(parse_coeffs(text), [1.0])


def load_problem(path: str) -> ProblemFile:
    data = json.loads(Path(path).read_text(encoding="utf-8"))
    return ProblemFile.model_validate(data)


def effective_opts(config: Config, problem: Optional[ProblemFile], **flags: Any) -> SolverOpts:
    """Defaults < config file / env < problem-file options < CLI flags"""
    opts = config.solver
    if problem is not None:
        opts = opts.with_overrides(**problem.solver_overrides())
    opts = opts.with_overrides(**flags)
    opts.validate()
    return opts


def solver_flags(fn: Callable) -> Callable:
    """Flags shared by every subcommand"""
    options = [
        click.option("--tol", type=float, default=None, help="Search stationarity tolerance (default 1e-8)."),
        click.option("--restarts", type=int, default=None, help="Seeded random restarts (default 16)."),
        click.option("--seed", type=int, default=None, help="Root seed; required for stochastic searches."),
        click.option("--degree", type=int, default=None, help="Primal polynomial degree (default 60)."),
        click.option("--truncation-tol", type=float, default=None,
                     help="Width of series-tail enclosures (default 1e-10)."),
        click.option("--workers", type=int, default=None, help="Threads for independent starts (default 1)."),
        click.option("--out", type=click.Path(dir_okay=False), default=None,
                     help="Write the JSON report here instead of stdout."),
        click.option("--timing", is_flag=True, default=False, help="Include runtime_ms in the report."),
    ]
    for option in reversed(options):
        fn = option(fn)
    return fn


def run_command(name: str):
    """
    Run the body, emit its report and map failures to exit codes.

    The body returns (report, exit_code); exceptions become an error record
    whose kind and exit code come from classify().
    """
    def decorator(body: Callable[..., Tuple[BaseModel, int]]):
        @functools.wraps(body)
        @click.pass_context
        def wrapper(ctx: click.Context, *args, **kwargs):
            config: Config = ctx.obj
            out = kwargs.get("out")
            output = replace(config.output, timing=config.output.timing or kwargs.get("timing", False))
            started = time.perf_counter()
            try:
                report, code = body(config, *args, **kwargs)
                if "runtime_ms" in type(report).model_fields:
                    report.runtime_ms = (time.perf_counter() - started) * 1e3
            except Exception as e:
                kind, code = classify(e)
                logger.error("command.failed", command=name, kind=kind, error=str(e))
                report = ErrorReport(command=name, error=ErrorRecord(kind=kind, message=str(e)))
            text = write_report(report, out, output)
            if not out:
                click.echo(text, nl=False)
            ctx.exit(code)

        return wrapper

    return decorator


@click.group()
@click.option("--config", "config_path", type=click.Path(dir_okay=False), default=None,
              help="YAML configuration file (falls back to INTERP_* environment variables).")
@click.option("--log-level", default=None, help="Log level for stderr diagnostics.")
@click.pass_context
def cli(ctx: click.Context, config_path: Optional[str], log_level: Optional[str]):
    """Minimal-norm interpolation in weighted spaces of analytic functions."""
    config = Config.from_file(config_path)
    if log_level:
        config.logging.level = log_level
    config.validate()
    configure_logging(config.logging)
    ctx.obj = config


def _sweep_degrees(n: int, degree: int):
    low = max(n - 1, 0)
    return sorted({int(d) for d in np.linspace(low, max(degree, low), SWEEP_POINTS)})


@cli.command("interp-norm")
@click.argument("problem_file", type=click.Path(dir_okay=False))
@solver_flags
@click.option("--csv", "csv_path", type=click.Path(dir_okay=False), default=None,
              help="Write the (degree, primal_value) sweep here.")
@run_command("interp-norm")
def interp_norm(config: Config, problem_file: str, csv_path: Optional[str], out: Optional[str],
                timing: bool, **flags):
    """Dual lower and primal upper bounds on I_X(λ, w)."""
    pf = load_problem(problem_file)
    opts = effective_opts(config, pf, **flags)
    problem = pf.to_problem()
    status = "ok"

    alpha, starts = np.zeros(0, dtype=complex), 0
    if problem.space.family == SpaceFamily.HINFINITY:
        dual_lower = dual_upper = hinf_interp_norm(problem.family, problem.targets)
    else:
        try:
            cert = dual_norm(problem, opts)
        except NoConvergenceError as e:
            cert, status = e.best, NO_CONVERGENCE
        dual_lower, dual_upper = cert.value_lower, cert.value_upper
        alpha, starts = cert.alpha_star, cert.starts

    shift_ratio = None
    if problem.space.family == SpaceFamily.WIENER and problem.family.is_simple() and np.any(alpha):
        shift_ratio = wiener_shift_ratio(problem, np.conj(alpha), opts.truncation_tol)

    degree = max(opts.degree, problem.n - 1)
    try:
        primal = primal_min(problem, degree, opts)
    except NoConvergenceError as e:
        primal, status = e.best, NO_CONVERGENCE

    if csv_path:
        degrees = _sweep_degrees(problem.n, degree)
        sweep = primal_sweep(problem, degrees, opts)
        write_series(csv_path, ["degree", "primal_value"],
                     [(d, c.value_upper) for d, c in zip(degrees, sweep)])

    report = InterpNormReport(
        status=status,
        space=SpaceModel.from_spec(problem.space),
        n=problem.n,
        dual_lower=dual_lower,
        dual_upper=dual_upper,
        primal_upper=primal.value_upper,
        gap=relative_gap(primal.value_upper, dual_lower),
        alpha_star=to_pairs(alpha),
        poly_star=to_pairs(primal.poly_star.coeffs),
        degree_used=primal.degree_used,
        residual=primal.residual,
        dual_starts=starts,
        shift_ratio=shift_ratio,
        effective_options=EffectiveOptions.from_opts(opts),
    )
    return report, EXIT_NO_CONVERGENCE if status == NO_CONVERGENCE else EXIT_OK


@cli.command("pick-check")
@click.argument("problem_file", type=click.Path(dir_okay=False))
@click.option("--C", "C", type=float, required=True, help="Norm budget to test.")
@solver_flags
@click.option("--csv", "csv_path", type=click.Path(dir_okay=False), default=None,
              help="Write the (C, margin) series here.")
@run_command("pick-check")
def pick_check(config: Config, problem_file: str, C: float, csv_path: Optional[str],
               out: Optional[str], timing: bool, **flags):
    """Pick-matrix verdict: is there an interpolant of norm at most C?"""
    if C < 0:
        raise CommandError("validation", "--C must be >= 0", EXIT_INPUT)
    pf = load_problem(problem_file)
    opts = effective_opts(config, pf, **flags)
    problem = pf.to_problem()
    family = problem.space.family
    if family == SpaceFamily.HINFINITY:
        if not problem.family.is_simple():
            raise CommandError("input", "repeated nodes with H^inf: use the model-matrix route "
                                        "(interp-norm or model-matrix)", EXIT_INPUT)
        pick = pick_min_c_hinf(problem.family, problem.targets)
    elif family == SpaceFamily.HARDY2:
        pick = pick_report_h2(problem.family, problem.targets)
    else:
        raise CommandError("input", f"pick-check needs an hinfinity or hardy2 space, got {family.value}",
                           EXIT_INPUT)

    if csv_path:
        top = max(2.0 * pick.C_min, C, 1.0)
        write_series(csv_path, ["C", "margin"], pick.margin_series(np.linspace(0.0, top, MARGIN_POINTS)))

    feasible = pick.is_feasible(C)
    report = PickCheckReport(
        space=SpaceModel.from_spec(problem.space),
        C=C,
        C_min=pick.C_min,
        psd_margin=pick.psd_margin_at(C),
        verdict="feasible" if feasible else "infeasible",
        effective_options=EffectiveOptions.from_opts(opts),
    )
    return report, EXIT_OK


@cli.command("model-matrix")
@click.argument("problem_file", type=click.Path(dir_okay=False))
@click.option("--terms", type=int, default=16, show_default=True,
              help="Taylor coefficients reported per basis function.")
@solver_flags
@click.option("--csv", "csv_path", type=click.Path(dir_okay=False), default=None,
              help="Write the basis windows (basis, k, re, im) here.")
@run_command("model-matrix")
def model_matrix(config: Config, problem_file: str, terms: int, csv_path: Optional[str],
                 out: Optional[str], timing: bool, **flags):
    """Compressed shift on K_λ with its invariant checks."""
    if terms < 1:
        raise CommandError("validation", "--terms must be >= 1", EXIT_INPUT)
    pf = load_problem(problem_file)
    opts = effective_opts(config, pf, **flags)
    family = pf.family()
    M = build_model_matrix(family).entries
    windows = basis_windows(family, terms - 1)

    if csv_path:
        rows = [(i, k, float(c.real), float(c.imag))
                for i, window in enumerate(windows) for k, c in enumerate(window)]
        write_series(csv_path, ["basis", "k", "re", "im"], rows)

    checks = InvariantChecks(
        lower_triangular=bool(not np.any(np.triu(M, 1))),
        diagonal_matches_nodes=bool(np.array_equal(np.diag(M), family.expanded())),
        annihilation_residual=annihilation_residual(family, M),
        gram_oracle_residual=float(np.max(np.abs(gram_oracle_matrix(family) - M))),
    )
    report = ModelMatrixReport(
        n=family.total_dim,
        nodes=NodeOut.from_pairs([(node.lam, node.multiplicity) for node in family.nodes]),
        entries=[to_pairs(row) for row in M],
        window_terms=terms,
        windows=[to_pairs(window) for window in windows],
        invariants=checks,
        effective_options=EffectiveOptions.from_opts(opts),
    )
    return report, EXIT_OK


@cli.command("matrix-bound")
@click.argument("problem_file", type=click.Path(dir_okay=False))
@click.option("--psi", default=None, help='Ψ = p/q as coefficient lists, e.g. "[1]/[2,-1]" (default z).')
@click.option("--norm", "norm_id", type=click.Choice([n.value for n in InducedNorm]), default=None,
              help="Induced norm for the comparison (default from the file, else spectral).")
@solver_flags
@run_command("matrix-bound")
def matrix_bound(config: Config, problem_file: str, psi: Optional[str], norm_id: Optional[str],
                 out: Optional[str], timing: bool, **flags):
    """Bound ‖Ψ(T)‖ from a matrix, a minimal polynomial or the file's nodes."""
    pf = load_problem(problem_file)
    opts = effective_opts(config, pf, **flags)
    Psi = parse_psi(psi)
    calc_model = pf.calculus_or_default()
    calc = CalculusSpec(calc_model.space.to_spec(), calc_model.constant_c)
    norm = InducedNorm(norm_id or calc_model.norm)

    M = pf.matrix_array()
    m = pf.minimal_poly()
    if M is not None:
        bound = verify_against_matrix(M, norm, Psi, calc, opts)
    elif m is not None:
        bound = compute_bound(m, Psi, calc, opts)
    elif pf.nodes:
        bound = bound_on_family(pf.family(), Psi, calc, opts)
    else:
        raise CommandError("validation", "matrix-bound needs a matrix, a minimal_polynomial or nodes",
                           EXIT_INPUT)

    report = MatrixBoundReport(
        space=SpaceModel.from_spec(calc.space),
        constant_c=calc.constant_c,
        norm=norm.value,
        psi=psi_model(Psi),
        nodes=NodeOut.from_pairs(bound.nodes),
        bound_lower=bound.bound_lower,
        bound_upper=bound.bound_upper,
        heuristic=bound.heuristic,
        actual=bound.actual,
        ratio=bound.ratio,
        hypothesis=bound.hypothesis,
        near_defective=bound.near_defective,
        discrepancy=bound.discrepancy,
        effective_options=EffectiveOptions.from_opts(opts),
    )
    return report, EXIT_OK


@cli.command("bound-harness")
@click.option("--samples", type=int, default=100, show_default=True, help="Random matrices to test.")
@click.option("--n-max", type=int, default=4, show_default=True, help="Largest matrix size.")
@click.option("--radius", type=float, default=0.9, show_default=True, help="Largest eigenvalue modulus.")
@click.option("--psi", default=None, help='Ψ = p/q as coefficient lists (default "[1]/[0,1]").')
@click.option("--norm", "norm_id", type=click.Choice([n.value for n in InducedNorm]),
              default=InducedNorm.ROWSUM.value, show_default=True)
@solver_flags
@click.option("--csv", "csv_path", type=click.Path(dir_okay=False), default=None,
              help="Write one row per sample here.")
@run_command("bound-harness")
def bound_harness(config: Config, samples: int, n_max: int, radius: float, psi: Optional[str],
                  norm_id: str, csv_path: Optional[str], out: Optional[str], timing: bool, **flags):
    """Wiener-calculus bounds against random triangular contractions."""
    if samples < 1 or n_max < 1 or not 0.0 < radius < 1.0:
        raise CommandError("validation", "need samples >= 1, n-max >= 1 and 0 < radius < 1", EXIT_INPUT)
    opts = effective_opts(config, None, **flags)
    seed = opts.require_seed()
    Psi = parse_psi(psi) if psi else RationalFn(Poly.constant(1.0), Poly.monomial(1))
    result = run_bound_harness(samples, n_max, seed, opts, InducedNorm(norm_id), Psi, radius)

    if csv_path:
        write_series(csv_path, ["index", "n", "actual", "bound_upper", "ratio", "violated"],
                     [(s.index, s.n, s.actual, s.bound_upper, s.ratio, s.violated) for s in result.samples])

    report = BoundHarnessReport(
        samples=samples,
        n_max=n_max,
        norm=norm_id,
        psi=psi_model(Psi),
        violations=result.violations,
        max_ratio=result.max_ratio,
        results=[HarnessSampleOut(index=s.index, n=s.n, actual=s.actual, bound_upper=s.bound_upper,
                                  ratio=s.ratio, violated=s.violated) for s in result.samples],
        effective_options=EffectiveOptions.from_opts(opts),
    )
    if result.violations:
        report.status = "violated"
        return report, EXIT_PRECONDITION
    return report, EXIT_OK
