import numpy as np
import pytest

from errors import DegenerateNodesError
from model_space import hinf_interp_norm
from pick import pick_min_c_h2, pick_min_c_hinf, pick_report_h2
from rational import KernelFamily, Node
from solvers import dual_norm, primal_min
from spaces import SpaceSpec

from .conftest import random_problem


class TestPickHinf:
    def test_single_node(self):
        report = pick_min_c_hinf(KernelFamily.simple([0.3 - 0.2j]), [0.7])
        assert report.C_min == pytest.approx(0.7)

    def test_schwarz(self, schwarz_family):
        report = pick_min_c_hinf(schwarz_family, [0.0, 0.5])
        assert report.C_min == pytest.approx(1.0, abs=1e-10)
        assert report.is_feasible(1.0)
        assert abs(report.psd_margin_at(1.0)) < 1e-9
        assert not report.is_feasible(0.5)

    def test_constant_data(self):
        c = 0.4 - 0.3j
        report = pick_min_c_hinf(KernelFamily.simple([0.1, -0.5, 0.6j]), [c, c, c])
        assert report.C_min == pytest.approx(abs(c), abs=1e-10)

    def test_classical_arrangement(self):
        lams = np.array([0.2, -0.4j])
        w = np.array([0.5, 0.1 + 0.3j])
        C = 0.9
        report = pick_min_c_hinf(KernelFamily.simple(lams), w)
        expected = (C ** 2 - w[:, None] * np.conj(w)[None, :]) / (1 - lams[:, None] * np.conj(lams)[None, :])
        np.testing.assert_allclose(report.pick_matrix(C), expected)

    def test_margin_series_increases(self, schwarz_family):
        report = pick_min_c_hinf(schwarz_family, [0.0, 0.5])
        margins = [m for _, m in report.margin_series(np.linspace(0, 2, 9))]
        assert all(b >= a for a, b in zip(margins, margins[1:]))

    def test_degenerate_nodes(self):
        with pytest.raises(DegenerateNodesError):
            pick_min_c_hinf(KernelFamily([Node(0.5, 2)]), [1.0, 0.0])

    @pytest.mark.parametrize("seed", range(10))
    def test_matches_compressed_shift(self, seed):
        problem = random_problem(200 + seed, 1 + seed % 4, SpaceSpec.hinfinity())
        report = pick_min_c_hinf(problem.family, problem.targets)
        assert hinf_interp_norm(problem.family, problem.targets) == pytest.approx(report.C_min, abs=1e-8)


class TestPickH2:
    def test_single_node(self):
        lam, w = 0.6j, 0.8
        value = pick_min_c_h2(KernelFamily.simple([lam]), [w])
        assert value == pytest.approx(abs(w) * np.sqrt(1 - abs(lam) ** 2))

    def test_zero_data(self):
        assert pick_min_c_h2(KernelFamily.simple([0.1, 0.2]), [0, 0]) == 0.0

    def test_accepts_repeated_nodes(self):
        family = KernelFamily([Node(0.3, 2)])
        assert pick_min_c_h2(family, [1.0, 0.5]) > 0

    def test_pick_form_verdict(self):
        family = KernelFamily.simple([0.2, -0.5])
        report = pick_report_h2(family, [1.0, 0.3j])
        assert report.is_feasible(report.C_min * (1 + 1e-6))
        assert not report.is_feasible(report.C_min * 0.99)

    @pytest.mark.parametrize("seed", range(8))
    def test_three_routes_agree(self, seed, fast_opts):
        problem = random_problem(300 + seed, 1 + seed % 4, SpaceSpec.hardy2())
        closed = pick_min_c_h2(problem.family, problem.targets)
        dual = dual_norm(problem, fast_opts).value_lower
        primal = primal_min(problem, 60, fast_opts).value_upper
        assert dual == pytest.approx(closed, rel=1e-5)
        assert primal == pytest.approx(closed, rel=1e-5)
        assert dual <= primal + 1e-12


@pytest.mark.slow
@pytest.mark.parametrize("seed", range(50))
def test_hardy2_acceptance_sweep(seed, fast_opts):
    problem = random_problem(1000 + seed, 1 + seed % 4, SpaceSpec.hardy2())
    closed = pick_min_c_h2(problem.family, problem.targets)
    assert dual_norm(problem, fast_opts).value_lower == pytest.approx(closed, rel=1e-5)
    assert primal_min(problem, 60, fast_opts).value_upper == pytest.approx(closed, rel=1e-5)
    report = pick_min_c_hinf(problem.family, problem.targets)
    assert hinf_interp_norm(problem.family, problem.targets) == pytest.approx(report.C_min, abs=1e-8)
