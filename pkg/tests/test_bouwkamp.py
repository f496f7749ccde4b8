import math
from fractions import Fraction

import numpy as np
import pytest
from numpy.testing import assert_allclose

from ballprolate import bouwkamp
from ballprolate.errors import ParameterError
from ballprolate.special_functions import JacobiParams, recurrence_coeffs

from oracles import dense_from_tridiagonal, jacobi_rotation_eigvals


def exact_coeff_oracle(k, alpha, beta):
    """Closed-form (a_k, b_k) evaluated in exact rational arithmetic."""
    al, be = Fraction(alpha), Fraction(beta)
    if k == 0:
        a2 = 4 * (al + 1) * (be + 1) / ((al + be + 2) ** 2 * (al + be + 3))
        b = (be - al) / (al + be + 2)
    else:
        a2 = (
            4 * (k + 1) * (k + al + 1) * (k + be + 1) * (k + al + be + 1)
            / ((2 * k + al + be + 1) * (2 * k + al + be + 2) ** 2 * (2 * k + al + be + 3))
        )
        b = (be * be - al * al) / ((2 * k + al + be) * (2 * k + al + be + 2))
    return math.sqrt(a2), float(b)


class TestBuildMatrix:
    def test_c0_diagonal(self):
        T = bouwkamp.build_matrix(1, 0.0, 0.0, 2)
        assert_allclose(T.diag, [4.0, 18.0, 40.0])
        assert_allclose(T.off, [0.0, 0.0])

    def test_c2_entries_against_exact_oracle(self):
        # radial family parameters (alpha, n + 1/2) = (0, 3/2)
        T = bouwkamp.build_matrix(1, 0.0, 2.0, 2)
        for j in range(3):
            a, b = exact_coeff_oracle(j, 0, Fraction(3, 2))
            gamma = (1 + 2 * j) * (1 + 2 * j + 3)
            assert_allclose(T.diag[j], gamma + (b + 1.0) * 2.0, rtol=1e-15)
            if j < 2:
                assert_allclose(T.off[j], a * 2.0, rtol=1e-15)

    def test_bandwidth_by_construction(self):
        T = bouwkamp.build_matrix(2, 1.0, 3.0, 5)
        assert T.order == 6
        assert len(T.off) == 5  # no second off-diagonal exists in the type

    def test_n0_needs_scalar_flag(self):
        with pytest.raises(ParameterError):
            bouwkamp.build_matrix(0, 0.0, 1.0, 4)
        T = bouwkamp.build_matrix(0, 0.0, 1.0, 4, scalar=True)
        assert T.order == 5

    def test_parameter_errors(self):
        with pytest.raises(ParameterError):
            bouwkamp.build_matrix(1, -1.0, 1.0, 4)
        with pytest.raises(ParameterError):
            bouwkamp.build_matrix(1, 0.0, -1.0, 4)
        with pytest.raises(ParameterError):
            bouwkamp.build_matrix(1, 0.0, 1.0, -1)


class TestEigenTridiagonal:
    def test_c0_matrix_is_trivial(self):
        T = bouwkamp.build_matrix(1, 0.0, 0.0, 2)
        pairs = bouwkamp.eigen_tridiagonal(T)
        assert_allclose([w for w, _ in pairs], [4.0, 18.0, 40.0])
        for i, (_, vec) in enumerate(pairs):
            expect = np.zeros(3)
            expect[i] = 1.0
            assert_allclose(vec, expect)

    def test_2x2_closed_form(self):
        T = bouwkamp.TridiagonalMatrix(np.array([2.0, 5.0]), np.array([1.25]))
        pairs = bouwkamp.eigen_tridiagonal(T)
        mid, rad = 3.5, math.hypot(1.5, 1.25)
        assert_allclose([w for w, _ in pairs], [mid - rad, mid + rad], rtol=1e-14)

    def test_random_against_dense_oracle(self):
        rng = np.random.default_rng(17)
        d = rng.normal(size=40) * 10
        e = np.abs(rng.normal(size=39)) + 0.05
        T = bouwkamp.TridiagonalMatrix(d, e)
        pairs = bouwkamp.eigen_tridiagonal(T)
        oracle = jacobi_rotation_eigvals(dense_from_tridiagonal(d, e))
        assert np.abs(np.array([w for w, _ in pairs]) - oracle).max() < 1e-10 * T.norm()

    def test_sign_convention(self):
        rng = np.random.default_rng(23)
        d = rng.normal(size=12)
        e = rng.normal(size=11)
        for _, vec in bouwkamp.eigen_tridiagonal(bouwkamp.TridiagonalMatrix(d, e)):
            nz = vec[vec != 0.0]
            assert nz[0] > 0.0
            assert_allclose(np.linalg.norm(vec), 1.0, rtol=1e-14)

    def test_residual_bound(self):
        rng = np.random.default_rng(29)
        d = rng.normal(size=35) * 5
        e = rng.normal(size=34)
        T = bouwkamp.TridiagonalMatrix(d, e)
        for chi, vec in bouwkamp.eigen_tridiagonal(T):
            assert bouwkamp.residual(T, chi, vec) <= 1e-11 * T.norm()


class TestResidual:
    def test_exact_eigenpair_zero(self):
        T = bouwkamp.TridiagonalMatrix(np.array([3.0, 8.0]), np.array([0.0]))
        v = np.array([1.0, 0.0])
        assert bouwkamp.residual(T, 3.0, v) == 0.0

    def test_linear_growth_in_perturbation(self):
        T = bouwkamp.TridiagonalMatrix(np.array([3.0, 8.0, 1.0]), np.array([0.0, 0.0]))
        v = np.array([0.0, 1.0, 0.0])
        # residual of (chi, v + eps e1) is ||(T - chi I) eps e1|| = eps |3 - 8|
        for eps in (1e-6, 1e-5, 1e-4):
            r = bouwkamp.residual(T, 8.0, v + eps * np.array([1.0, 0.0, 0.0]))
            assert_allclose(r, eps * 5.0, rtol=1e-10)

    def test_dimension_mismatch(self):
        T = bouwkamp.TridiagonalMatrix(np.array([3.0, 8.0]), np.array([0.5]))
        with pytest.raises(ParameterError):
            bouwkamp.residual(T, 3.0, np.ones(3))


class TestSolveModes:
    def test_c0_gamma_table(self):
        table = bouwkamp.solve_modes(3, 0.0, 0.0)
        assert table.modes() == [(1, 0), (1, 1), (2, 0), (3, 0)]
        assert_allclose(table[(1, 0)].chi, 4.0, rtol=1e-12)
        assert_allclose(table[(1, 1)].chi, 18.0, rtol=1e-12)
        assert_allclose(table[(2, 0)].chi, 10.0, rtol=1e-12)
        assert_allclose(table[(3, 0)].chi, 18.0, rtol=1e-12)
        # eigenvectors are standard basis vectors at c = 0
        beta = table[(1, 1)].beta
        assert_allclose(beta[1], 1.0)
        assert np.abs(np.delete(beta, 1)).max() == 0.0

    def test_truncation_stability(self):
        # doubling K leaves chi unchanged to 1e-10
        table = bouwkamp.solve_modes(3, 0.0, 2.0)
        for (n, k), exp in table.entries.items():
            K2 = 2 * exp.truncation
            T = bouwkamp.build_matrix(n, 0.0, 2.0, K2)
            chi2 = bouwkamp.eigen_tridiagonal(T)[k][0]
            assert abs(exp.chi - chi2) <= 1e-10 * max(1.0, abs(chi2))

    def test_ordering_in_k(self):
        for alpha, c in [(0.0, 2.0), (1.0, 5.0), (-0.5, 1.0)]:
            table = bouwkamp.solve_modes(6, alpha, c)
            for n in range(1, 7):
                chis = [table[(m, k)].chi for m, k in table.modes() if m == n]
                assert all(a < b for a, b in zip(chis, chis[1:]))

    def test_continuity_to_c0(self):
        # chi(c) -> gamma with an O(c^2) gap; the c^2 coefficient is
        # (b_k + 1)/2 <= 1, measured here at c = 1e-3
        c = 1e-3
        table = bouwkamp.solve_modes(4, 0.0, c)
        for (n, k), exp in table.entries.items():
            gamma = bouwkamp.gamma_eigenvalue(n + 2 * k, 0.0)
            assert abs(exp.chi - gamma) <= 1.5 * c * c

    def test_gershgorin_bound(self):
        table = bouwkamp.solve_modes(4, 1.0, 3.0)
        for (n, k), exp in table.entries.items():
            T = bouwkamp.build_matrix(n, 1.0, 3.0, exp.truncation)
            radius = np.zeros(T.order)
            radius[:-1] += np.abs(T.off)
            radius[1:] += np.abs(T.off)
            inside = np.any(np.abs(exp.chi - T.diag) <= radius + 1e-9)
            assert inside

    def test_tail_gate(self):
        table = bouwkamp.solve_modes(6, 0.0, 2.0)
        for exp in table.entries.values():
            assert abs(exp.beta[-1]) <= 1e-12 * np.linalg.norm(exp.beta)

    def test_spectrum_simple_when_c_positive(self):
        T = bouwkamp.build_matrix(1, 0.0, 2.0, 20)
        assert np.all(T.off > 0.0)
        w = np.array([chi for chi, _ in bouwkamp.eigen_tridiagonal(T)])
        assert np.all(np.diff(w) > 1e-8)

    def test_truncation_rule(self):
        # M = 2N + 2 alpha + 30, K = ceil((M - n)/2); non-integer alpha
        # rounds the 2 alpha term up
        assert bouwkamp.truncation_order(3, 0.0, 1) == 18  # ceil((36-1)/2)
        assert bouwkamp.truncation_order(3, 1.0, 1) == 19
        assert bouwkamp.truncation_order(3, 0.25, 1) == 18  # ceil(0.5) = 1 -> ceil(36/2)
        assert bouwkamp.truncation_order(3, 0.25, 2) == 18

    def test_include_scalar(self):
        table = bouwkamp.solve_modes(2, 0.0, 1.0, include_scalar=True)
        assert (0, 0) in table.entries and (0, 1) in table.entries
