"""Kernel-level tests: the tridiagonal eigensolvers against the dense
Jacobi-rotation oracle and the numba/numpy backend pair against each other."""

import math

import numpy as np
import pytest
from numpy.testing import assert_allclose

from ballprolate import kernels
from ballprolate._backend import NUMBA_ENABLED

from oracles import dense_from_tridiagonal, jacobi_rotation_eigvals


class TestTridiagQL:
    def test_diagonal_matrix_exact(self):
        d = np.array([4.0, 18.0, 40.0])
        w, V = kernels.tridiag_eigh(d, np.zeros(2))
        assert_allclose(w, d)
        assert_allclose(np.abs(V), np.eye(3))

    def test_2x2_closed_form(self):
        d0, d1, e = 3.0, 7.0, 2.5
        w, V = kernels.tridiag_eigh(np.array([d0, d1]), np.array([e]))
        mid = 0.5 * (d0 + d1)
        rad = math.hypot(0.5 * (d0 - d1), e)
        assert_allclose(w, [mid - rad, mid + rad], rtol=1e-15)

    @pytest.mark.parametrize("seed", [0, 1, 2])
    def test_random_matches_dense_oracle(self, seed):
        rng = np.random.default_rng(seed)
        n = 40
        d = rng.normal(size=n) * 20.0
        e = rng.normal(size=n - 1) * 5.0
        w, V = kernels.tridiag_eigh(d, e)
        oracle = jacobi_rotation_eigvals(dense_from_tridiagonal(d, e))
        scale = max(1.0, np.abs(w).max())
        assert np.abs(w - oracle).max() <= 1e-10 * scale
        # eigenvector quality: orthogonality and residuals
        assert np.abs(V.T @ V - np.eye(n)).max() < 1e-12
        A = dense_from_tridiagonal(d, e)
        res = np.abs(A @ V - V * w).max()
        assert res <= 1e-12 * scale

    def test_ascending_order(self):
        rng = np.random.default_rng(3)
        d = rng.normal(size=25)
        e = rng.normal(size=24)
        w, _ = kernels.tridiag_eigh(d, e)
        assert np.all(np.diff(w) >= 0)


class TestBisection:
    def test_agrees_with_ql(self):
        rng = np.random.default_rng(5)
        d = rng.normal(size=30) * 10.0
        e = np.abs(rng.normal(size=29)) + 0.1
        w, _ = kernels.tridiag_eigh(d, e)
        idx = np.arange(6)
        wb = kernels.tridiag_eigvals_bisect(d, e, idx)
        scale = max(1.0, np.abs(w).max())
        assert np.abs(w[:6] - wb).max() <= 1e-11 * scale

    def test_selected_interior_indices(self):
        rng = np.random.default_rng(8)
        d = rng.normal(size=20)
        e = rng.normal(size=19)
        w, _ = kernels.tridiag_eigh(d, e)
        wb = kernels.tridiag_eigvals_bisect(d, e, np.array([7, 12, 19]))
        assert_allclose(wb, w[[7, 12, 19]], atol=1e-12)


@pytest.mark.skipif(not NUMBA_ENABLED, reason="numba backend not active")
class TestBackendParity:
    """The compiled loops and the vectorized numpy fallback must agree."""

    def test_jacobi_table(self):
        rng = np.random.default_rng(1)
        eta = rng.uniform(-1, 1, size=200)
        a = rng.uniform(0.3, 0.7, size=10)
        b = rng.uniform(-0.2, 0.2, size=10)
        loops = kernels._jacobi_table_loops(eta, a, b, 1.4, 2.0, 0.1, 10)
        vec = kernels._jacobi_table_numpy(eta, a, b, 1.4, 2.0, 0.1, 10)
        assert_allclose(loops, vec, rtol=1e-13, atol=1e-15)

    def test_jacobi_series(self):
        rng = np.random.default_rng(2)
        eta = rng.uniform(-1, 1, size=150)
        coef = rng.normal(size=12)
        a = rng.uniform(0.3, 0.7, size=11)
        b = rng.uniform(-0.2, 0.2, size=11)
        loops = kernels._jacobi_series_loops(eta, coef, a, b, 1.4, 2.0, 0.1)
        vec = kernels._jacobi_series_numpy(eta, coef, a, b, 1.4, 2.0, 0.1)
        assert_allclose(loops, vec, rtol=1e-12, atol=1e-13)

    def test_tql2(self):
        rng = np.random.default_rng(3)
        n = 30
        dd = rng.normal(size=n)
        ee = rng.normal(size=n)
        ee[-1] = 0.0
        d1, e1, V1 = dd.copy(), ee.copy(), np.eye(n)
        d2, e2, V2 = dd.copy(), ee.copy(), np.eye(n)
        assert kernels._tql2_loops(d1, e1, V1) == 0
        assert kernels._tql2_numpy(d2, e2, V2) == 0
        assert_allclose(np.sort(d1), np.sort(d2), atol=1e-12)

    def test_fourier_sum(self):
        rng = np.random.default_rng(4)
        points = rng.uniform(-0.5, 0.5, size=(7, 3))
        nodes = rng.uniform(-1, 1, size=(500, 3))
        wf_s = rng.normal(size=500) + 1j * rng.normal(size=500)
        wf_v = rng.normal(size=(500, 3)) + 1j * rng.normal(size=(500, 3))
        for csign in (-2.0, 3.0):
            a = kernels._ft_scalar_loops(points, nodes, wf_s, csign)
            b = kernels._ft_numpy(points, nodes, wf_s, csign)
            assert_allclose(a, b, rtol=1e-12, atol=1e-13)
            a = kernels._ft_vector_loops(points, nodes, wf_v, csign)
            b = kernels._ft_numpy(points, nodes, wf_v, csign)
            assert_allclose(a, b, rtol=1e-12, atol=1e-13)

    def test_bisect(self):
        rng = np.random.default_rng(5)
        d = rng.normal(size=15)
        e = np.zeros(15)
        e[:14] = rng.normal(size=14)
        idx = np.array([0, 3, 14])
        a = kernels._bisect_loops(d, e, -30.0, 30.0, idx, 1e-14)
        b = kernels._bisect_numpy(d, e, -30.0, 30.0, idx, 1e-14)
        assert_allclose(a, b, atol=1e-12)
