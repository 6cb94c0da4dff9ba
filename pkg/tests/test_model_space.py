import numpy as np
import pytest

from errors import PoleOnSpectrumError, UnsupportedSpaceError
from model_space import (basis_windows, build_model_matrix, build_star_norm, gram_oracle_matrix, hinf_interp_norm,
                         lift_to_polynomial, model_matrix_entries, poly_of_matrix, rational_of_matrix,
                         rational_of_matrix_checked, star_norm_vector, star_operator_norm)
from rational import KernelFamily, Node, Poly, RationalFn, blaschke_factor, hermite_interpolant, node_polynomial
from solvers import InterpolationProblem, dual_norm
from spaces import SpaceSpec, weighted_norm

from .conftest import random_nodes, random_targets


MIXED = KernelFamily([Node(0.3 + 0.2j, 2), Node(-0.5, 1), Node(0.1j, 1)])


class TestModelMatrix:
    def test_nodes_at_zero_give_jordan_shift(self):
        M = model_matrix_entries(KernelFamily.at_zero(3))
        np.testing.assert_array_equal(M, np.eye(3, k=-1))

    def test_two_node_closed_form(self):
        a, b = 0.3 - 0.4j, 0.5j
        M = model_matrix_entries(KernelFamily.simple([a, b]))
        expected = [[a, 0], [np.sqrt(1 - abs(a) ** 2) * np.sqrt(1 - abs(b) ** 2), b]]
        np.testing.assert_allclose(M, expected, atol=1e-15)

    def test_invariants(self):
        mm = build_model_matrix(MIXED)
        np.testing.assert_array_equal(np.triu(mm.entries, 1), 0)
        np.testing.assert_array_equal(np.diag(mm.entries), MIXED.expanded())
        np.testing.assert_allclose(poly_of_matrix(node_polynomial(MIXED), mm.entries), 0, atol=1e-12)

    def test_matches_gram_oracle(self):
        M = build_model_matrix(MIXED).entries
        assert np.max(np.abs(gram_oracle_matrix(MIXED) - M)) < 1e-10


class TestCalculus:
    def test_identity(self):
        M = build_model_matrix(MIXED).entries
        np.testing.assert_allclose(rational_of_matrix(RationalFn.from_poly(Poly.monomial(1)), M), M)

    def test_resolvent(self):
        M = build_model_matrix(KernelFamily.at_zero(2)).entries
        Psi = RationalFn(Poly([1]), Poly([-2, 1]))
        np.testing.assert_allclose(rational_of_matrix(Psi, M), np.linalg.inv(M - 2 * np.eye(2)), atol=1e-15)

    def test_left_and_right_agree(self):
        M = build_model_matrix(MIXED).entries
        Psi = RationalFn(Poly([1, 2, -1j]), Poly([3, 1]) * Poly([2j, 1]))
        _, discrepancy = rational_of_matrix_checked(Psi, M)
        assert discrepancy < 1e-12

    def test_pole_on_spectrum(self):
        M = build_model_matrix(KernelFamily.at_zero(2)).entries
        with pytest.raises(PoleOnSpectrumError):
            rational_of_matrix(RationalFn(Poly([1]), Poly([0, 1])), M)

    def test_lift_polynomial_is_unchanged(self):
        p = Poly([1, -2, 0.5j])
        assert lift_to_polynomial(RationalFn.from_poly(p), Poly([-0.5, 1])) == p

    def test_lift_reciprocal(self):
        g = lift_to_polynomial(RationalFn(Poly([1]), Poly([0, 1])), Poly([-0.5, 1]))
        assert g.degree() == 0
        assert g(0.5) == pytest.approx(2.0)

    def test_lift_matches_jets(self):
        Psi = RationalFn(Poly([1, 1]), Poly([-1.5, 1]) * Poly([2j, 1]))
        m = Poly.from_roots([0.3, 0.3, -0.4])
        g = lift_to_polynomial(Psi, m)
        for z in (0.3, -0.4):
            assert g(z) == pytest.approx(Psi(z), abs=1e-12)
        p, q = Psi.num, Psi.den
        dpsi = (p.derivative()(0.3) * q(0.3) - p(0.3) * q.derivative()(0.3)) / q(0.3) ** 2
        assert g.derivative()(0.3) == pytest.approx(dpsi, abs=1e-10)

    def test_lift_agrees_with_matrix_function(self):
        Psi = RationalFn(Poly([1, 1]), Poly([-1.5, 1]))
        M = build_model_matrix(MIXED).entries
        g = lift_to_polynomial(Psi, node_polynomial(MIXED))
        np.testing.assert_allclose(poly_of_matrix(g, M), rational_of_matrix(Psi, M), atol=1e-10)


class TestStarNorm:
    def test_zero_nodes_wiener_is_sup_norm(self):
        sn = build_star_norm(KernelFamily.at_zero(3), SpaceSpec.wiener())
        x = np.array([0.5, -2j, 1.0])
        enc = star_norm_vector(sn, x)
        assert enc.lower == pytest.approx(2.0)
        assert enc.upper == pytest.approx(2.0)

    def test_hardy2_is_euclidean(self):
        sn = build_star_norm(MIXED, SpaceSpec.hardy2())
        x = np.array([1, 1j, -1, 0.5])
        assert star_norm_vector(sn, x).lower == pytest.approx(np.linalg.norm(x))

    def test_enclosure_brackets_long_window(self):
        family = KernelFamily.simple([0.6, -0.3j])
        space = SpaceSpec.beurling_sobolev(2, 1)
        sn = build_star_norm(family, space, 1e-10)
        x = np.array([1.0, 0.5 - 0.5j])
        long = basis_windows(family, 4000)
        value = weighted_norm(x @ long, space.dual_weights(np.arange(4001)), space.p)
        assert star_norm_vector(sn, x).contains(value, 1e-12)

    def test_compression_is_contraction(self, fast_opts):
        sn = build_star_norm(MIXED, SpaceSpec.hardy2())
        est = star_operator_norm(sn, build_model_matrix(MIXED).entries, fast_opts)
        assert est.upper <= 1.0 + 1e-12
        assert not est.heuristic

    def test_identity_is_exactly_one(self, fast_opts):
        sn = build_star_norm(MIXED, SpaceSpec.wiener())
        est = star_operator_norm(sn, np.eye(4), fast_opts)
        assert est.lower == est.upper == 1.0

    def test_agrees_with_dual_on_taylor_data(self, fast_opts):
        coeffs = np.array([0.5, -0.3j, 0.2])
        family = KernelFamily.at_zero(3)
        M = build_model_matrix(family).entries
        A = poly_of_matrix(Poly(coeffs), M).conj().T
        est = star_operator_norm(build_star_norm(family, SpaceSpec.wiener()), A, fast_opts)
        jets_at_zero = coeffs * np.array([1, 1, 2])
        dual = dual_norm(InterpolationProblem(SpaceSpec.wiener(), family, jets_at_zero), fast_opts)
        assert est.lower == pytest.approx(np.sum(np.abs(coeffs)), rel=1e-9)
        assert dual.value_lower == pytest.approx(est.lower, rel=1e-4)

    def test_shape_mismatch(self, fast_opts):
        sn = build_star_norm(MIXED, SpaceSpec.wiener())
        with pytest.raises(ValueError):
            star_operator_norm(sn, np.eye(2), fast_opts)

    def test_hinf_is_unsupported(self):
        with pytest.raises(UnsupportedSpaceError):
            build_star_norm(MIXED, SpaceSpec.hinfinity())


class TestHinfInterpNorm:
    def test_schwarz(self, schwarz_family):
        assert hinf_interp_norm(schwarz_family, [0.0, 0.5]) == pytest.approx(1.0, abs=1e-10)

    def test_single_node(self):
        assert hinf_interp_norm(KernelFamily.simple([0.4j]), [0.7]) == pytest.approx(0.7)

    def test_blaschke_data_has_norm_one(self):
        lams = np.array([0.1, -0.5j, 0.6 + 0.2j])
        values = blaschke_factor(0.3)(lams)
        assert hinf_interp_norm(KernelFamily.simple(lams), values) == pytest.approx(1.0, abs=1e-8)


@pytest.mark.slow
@pytest.mark.parametrize("seed", range(20))
def test_star_norm_of_interpolant_matches_wiener_dual(seed, fast_opts):
    rng = np.random.default_rng(seed)
    n = 1 + seed % 3
    family = KernelFamily.simple(random_nodes(rng, n, radius=0.7))
    targets = random_targets(rng, n)
    M = build_model_matrix(family).entries
    A = poly_of_matrix(hermite_interpolant(family, targets), M).conj().T
    est = star_operator_norm(build_star_norm(family, SpaceSpec.wiener()), A, fast_opts)
    dual = dual_norm(InterpolationProblem(SpaceSpec.wiener(), family, targets), fast_opts)
    assert dual.value_lower == pytest.approx(est.lower, rel=1e-3)


@pytest.mark.slow
@pytest.mark.parametrize("seed", range(20))
def test_model_matrix_matches_gram_oracle_on_random_families(seed):
    rng = np.random.default_rng(200 + seed)
    lams = random_nodes(rng, 1 + seed % 4)
    family = KernelFamily([Node(lam, int(rng.integers(1, 3))) for lam in lams])
    M = build_model_matrix(family).entries
    assert np.max(np.abs(gram_oracle_matrix(family) - M)) < 1e-10
