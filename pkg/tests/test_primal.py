import numpy as np
import pytest

from errors import DegreeTooSmallError
from rational import KernelFamily, Node, jets
from solvers import InterpolationProblem, primal_min, primal_sweep, relative_gap
from pick import pick_min_c_h2
from spaces import SpaceSpec, x_norm_poly

from .conftest import random_problem


def test_wiener_single_node_is_constant(fast_opts):
    problem = InterpolationProblem.simple(SpaceSpec.wiener(), [0.5], [0.7])
    cert = primal_min(problem, 8, fast_opts)
    assert cert.value_upper == pytest.approx(0.7, abs=1e-6)


@pytest.mark.parametrize("seed", range(4))
def test_hardy2_matches_gram_form(seed, fast_opts):
    problem = random_problem(100 + seed, 1 + seed, SpaceSpec.hardy2())
    cert = primal_min(problem, 60, fast_opts)
    assert cert.value_upper == pytest.approx(pick_min_c_h2(problem.family, problem.targets), rel=1e-5)


def test_interpolates_jets(fast_opts):
    family = KernelFamily([Node(0.3, 2), Node(-0.5j, 1)])
    problem = InterpolationProblem(SpaceSpec.beurling_sobolev(3, 0.5), family, [1.0, -0.5j, 0.25])
    cert = primal_min(problem, 20, fast_opts)
    np.testing.assert_allclose(jets(family, cert.poly_star), problem.targets, atol=1e-9)
    assert cert.residual <= 1e-9
    assert cert.value_upper == pytest.approx(x_norm_poly(problem.space, cert.poly_star))


def test_hinf_schwarz_instance(schwarz_family, fast_opts):
    problem = InterpolationProblem(SpaceSpec.hinfinity(), schwarz_family, [0.0, 0.5])
    cert = primal_min(problem, 10, fast_opts)
    assert 1.0 - 1e-9 <= cert.value_upper <= 1.0 + 1e-7


def test_degree_too_small(fast_opts):
    problem = InterpolationProblem.simple(SpaceSpec.wiener(), [0.1, 0.2, 0.3], [1, 2, 3])
    with pytest.raises(DegreeTooSmallError):
        primal_min(problem, 1, fast_opts)


def test_minimal_degree_returns_hermite_interpolant(fast_opts):
    problem = InterpolationProblem.simple(SpaceSpec.wiener(), [0.1, -0.2], [1, 2])
    cert = primal_min(problem, 1, fast_opts)
    assert cert.degree_used == 1
    assert cert.poly_star.degree() <= 1


def test_sweep_is_monotone(fast_opts):
    problem = random_problem(4, 3, SpaceSpec.wiener(), radius=0.7)
    values = [c.value_upper for c in primal_sweep(problem, [2, 4, 8, 16, 32], fast_opts)]
    assert all(b <= a for a, b in zip(values, values[1:]))


def test_relative_gap():
    assert relative_gap(0.0, 0.0) == 0.0
    assert relative_gap(1.0, 0.9) == pytest.approx(0.1)
    assert relative_gap(0.0, 1.0) == float("inf")
