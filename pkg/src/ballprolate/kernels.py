"""Hot numerical kernels: Jacobi recurrences, tridiagonal eigensolvers,
and finite-Fourier quadrature sums.

Each kernel has a numba loop implementation and a vectorized pure-NumPy
fallback; the public dispatchers pick one according to
:data:`ballprolate._backend.NUMBA_ENABLED`.  Both paths implement identical
arithmetic (they differ only in floating-point reduction order) and are
compared directly in the test suite and in ``benchmarks/bench_backends.py``.
"""

import numpy as np

from ._backend import NUMBA_ENABLED, njit, prange

_EPS = np.finfo(np.float64).eps


# ---------------------------------------------------------------------------
# Jacobi recurrence evaluation
#
# The three-term recurrence is driven by precomputed coefficient arrays
# a[0..kmax-1], b[0..kmax-1] and the two seed polynomials
#   J_0 = j0,   J_1 = j1l*eta + j1c.
# Values follow  J_{k+1} = ((eta - b_k) J_k - a_{k-1} J_{k-1}) / a_k
# and the derivative levels follow the eta-differentiated recurrence.
# ---------------------------------------------------------------------------


@njit(cache=True)
def _jacobi_table_loops(eta, a, b, j0, j1l, j1c, kmax):
    npts = eta.shape[0]
    out = np.empty((kmax + 1, npts))
    for p in range(npts):
        x = eta[p]
        jm = j0
        out[0, p] = jm
        if kmax >= 1:
            jk = j1l * x + j1c
            out[1, p] = jk
            for k in range(1, kmax):
                jn = ((x - b[k]) * jk - a[k - 1] * jm) / a[k]
                out[k + 1, p] = jn
                jm = jk
                jk = jn
    return out


def _jacobi_table_numpy(eta, a, b, j0, j1l, j1c, kmax):
    npts = eta.shape[0]
    out = np.empty((kmax + 1, npts))
    out[0] = j0
    if kmax >= 1:
        out[1] = j1l * eta + j1c
        for k in range(1, kmax):
            out[k + 1] = ((eta - b[k]) * out[k] - a[k - 1] * out[k - 1]) / a[k]
    return out


def jacobi_table(eta, a, b, j0, j1l, j1c, kmax):
    """Values of J_0..J_kmax at the points ``eta``, shape (kmax+1, len(eta))."""
    eta = np.ascontiguousarray(eta, dtype=np.float64)
    if NUMBA_ENABLED:
        return _jacobi_table_loops(eta, a, b, j0, j1l, j1c, kmax)
    return _jacobi_table_numpy(eta, a, b, j0, j1l, j1c, kmax)


@njit(cache=True)
def _jacobi_series_loops(eta, coef, a, b, j0, j1l, j1c):
    npts = eta.shape[0]
    kmax = coef.shape[0] - 1
    out = np.zeros((3, npts))
    for p in range(npts):
        x = eta[p]
        vm, dm, sm = j0, 0.0, 0.0
        f0 = coef[0] * vm
        f1 = 0.0
        f2 = 0.0
        if kmax >= 1:
            vk = j1l * x + j1c
            dk = j1l
            sk = 0.0
            f0 += coef[1] * vk
            f1 += coef[1] * dk
            for k in range(1, kmax):
                vn = ((x - b[k]) * vk - a[k - 1] * vm) / a[k]
                dn = ((x - b[k]) * dk + vk - a[k - 1] * dm) / a[k]
                sn = ((x - b[k]) * sk + 2.0 * dk - a[k - 1] * sm) / a[k]
                c = coef[k + 1]
                f0 += c * vn
                f1 += c * dn
                f2 += c * sn
                vm, dm, sm = vk, dk, sk
                vk, dk, sk = vn, dn, sn
        out[0, p] = f0
        out[1, p] = f1
        out[2, p] = f2
    return out


def _jacobi_series_numpy(eta, coef, a, b, j0, j1l, j1c):
    npts = eta.shape[0]
    kmax = coef.shape[0] - 1
    out = np.zeros((3, npts))
    vm = np.full(npts, j0)
    dm = np.zeros(npts)
    sm = np.zeros(npts)
    out[0] += coef[0] * vm
    if kmax >= 1:
        vk = j1l * eta + j1c
        dk = np.full(npts, j1l)
        sk = np.zeros(npts)
        out[0] += coef[1] * vk
        out[1] += coef[1] * dk
        for k in range(1, kmax):
            w = eta - b[k]
            vn = (w * vk - a[k - 1] * vm) / a[k]
            dn = (w * dk + vk - a[k - 1] * dm) / a[k]
            sn = (w * sk + 2.0 * dk - a[k - 1] * sm) / a[k]
            c = coef[k + 1]
            out[0] += c * vn
            out[1] += c * dn
            out[2] += c * sn
            vm, dm, sm = vk, dk, sk
            vk, dk, sk = vn, dn, sn
    return out


def jacobi_series(eta, coef, a, b, j0, j1l, j1c):
    """Sum_k coef[k] J_k and its first two eta-derivatives, shape (3, len(eta))."""
    eta = np.ascontiguousarray(eta, dtype=np.float64)
    coef = np.ascontiguousarray(coef, dtype=np.float64)
    if NUMBA_ENABLED:
        return _jacobi_series_loops(eta, coef, a, b, j0, j1l, j1c)
    return _jacobi_series_numpy(eta, coef, a, b, j0, j1l, j1c)


# ---------------------------------------------------------------------------
# Symmetric tridiagonal eigensolver: implicit-shift QL with eigenvector
# accumulation (EISPACK tql2), plus Sturm-sequence bisection for selected
# eigenvalues.
# ---------------------------------------------------------------------------


@njit(cache=True)
def _tql2_loops(d, e, V):
    n = d.shape[0]
    for l in range(n):
        it = 0
        while True:
            m = l
            while m < n - 1:
                dd = abs(d[m]) + abs(d[m + 1])
                if abs(e[m]) <= _EPS * dd:
                    break
                m += 1
            if m == l:
                break
            it += 1
            if it > 100:
                return 1
            g = (d[l + 1] - d[l]) / (2.0 * e[l])
            r = np.hypot(g, 1.0)
            if g >= 0.0:
                g = d[m] - d[l] + e[l] / (g + r)
            else:
                g = d[m] - d[l] + e[l] / (g - r)
            s = 1.0
            c = 1.0
            p = 0.0
            underflow = False
            for i in range(m - 1, l - 1, -1):
                f = s * e[i]
                bb = c * e[i]
                r = np.hypot(f, g)
                e[i + 1] = r
                if r == 0.0:
                    d[i + 1] -= p
                    e[m] = 0.0
                    underflow = True
                    break
                s = f / r
                c = g / r
                g = d[i + 1] - p
                r = (d[i] - g) * s + 2.0 * c * bb
                p = s * r
                d[i + 1] = g + p
                g = c * r - bb
                for k in range(n):
                    f = V[k, i + 1]
                    V[k, i + 1] = s * V[k, i] + c * f
                    V[k, i] = c * V[k, i] - s * f
            if not underflow:
                d[l] -= p
                e[l] = g
                e[m] = 0.0
    return 0


def _tql2_numpy(d, e, V):
    n = d.shape[0]
    for l in range(n):
        it = 0
        while True:
            m = l
            while m < n - 1:
                dd = abs(d[m]) + abs(d[m + 1])
                if abs(e[m]) <= _EPS * dd:
                    break
                m += 1
            if m == l:
                break
            it += 1
            if it > 100:
                return 1
            g = (d[l + 1] - d[l]) / (2.0 * e[l])
            r = np.hypot(g, 1.0)
            g = d[m] - d[l] + e[l] / (g + (r if g >= 0.0 else -r))
            s = 1.0
            c = 1.0
            p = 0.0
            underflow = False
            for i in range(m - 1, l - 1, -1):
                f = s * e[i]
                bb = c * e[i]
                r = np.hypot(f, g)
                e[i + 1] = r
                if r == 0.0:
                    d[i + 1] -= p
                    e[m] = 0.0
                    underflow = True
                    break
                s = f / r
                c = g / r
                g = d[i + 1] - p
                r = (d[i] - g) * s + 2.0 * c * bb
                p = s * r
                d[i + 1] = g + p
                g = c * r - bb
                col = V[:, i + 1].copy()
                V[:, i + 1] = s * V[:, i] + c * col
                V[:, i] = c * V[:, i] - s * col
            if not underflow:
                d[l] -= p
                e[l] = g
                e[m] = 0.0
    return 0


def tridiag_eigh(diag, off):
    """Full spectrum of a symmetric tridiagonal matrix.

    Returns eigenvalues ascending and the matching eigenvectors as columns
    of an orthogonal matrix.
    """
    n = len(diag)
    d = np.array(diag, dtype=np.float64)
    e = np.zeros(n)
    e[: n - 1] = off
    V = np.eye(n)
    if n > 1:
        fail = _tql2_loops(d, e, V) if NUMBA_ENABLED else _tql2_numpy(d, e, V)
        if fail:
            raise RuntimeError("tridiagonal QL iteration failed to converge")
    order = np.argsort(d, kind="stable")
    return d[order], V[:, order]


@njit(cache=True)
def _sturm_count_loops(d, e, x):
    n = d.shape[0]
    count = 0
    q = d[0] - x
    if q < 0.0:
        count += 1
    for i in range(1, n):
        if q == 0.0:
            q = _EPS * (abs(e[i - 1]) + _EPS)
        q = d[i] - x - e[i - 1] * e[i - 1] / q
        if q < 0.0:
            count += 1
    return count


def _sturm_count_numpy(d, e, xs):
    # Vectorized over shifts: one pass down the matrix for all xs at once.
    q = d[0] - xs
    count = (q < 0.0).astype(np.int64)
    for i in range(1, d.shape[0]):
        q = np.where(q == 0.0, _EPS * (abs(e[i - 1]) + _EPS), q)
        q = d[i] - xs - e[i - 1] * e[i - 1] / q
        count += q < 0.0
    return count


@njit(cache=True)
def _bisect_loops(d, e, lo0, hi0, idx, tol):
    out = np.empty(idx.shape[0])
    for j in range(idx.shape[0]):
        target = idx[j] + 1
        lo = lo0
        hi = hi0
        for _ in range(200):
            mid = 0.5 * (lo + hi)
            if _sturm_count_loops(d, e, mid) >= target:
                hi = mid
            else:
                lo = mid
            if hi - lo <= tol + _EPS * (abs(lo) + abs(hi)):
                break
        out[j] = 0.5 * (lo + hi)
    return out


def _bisect_numpy(d, e, lo0, hi0, idx, tol):
    lo = np.full(idx.shape[0], lo0)
    hi = np.full(idx.shape[0], hi0)
    target = idx + 1
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        ge = _sturm_count_numpy(d, e, mid) >= target
        hi = np.where(ge, mid, hi)
        lo = np.where(ge, lo, mid)
        if np.all(hi - lo <= tol + _EPS * (np.abs(lo) + np.abs(hi))):
            break
    return 0.5 * (lo + hi)


def tridiag_eigvals_bisect(diag, off, indices, tol=0.0):
    """Selected eigenvalues (ascending 0-based ``indices``) by Sturm bisection."""
    n = len(diag)
    d = np.ascontiguousarray(diag, dtype=np.float64)
    e = np.zeros(n)
    e[: n - 1] = off
    # Gershgorin bracket: every eigenvalue lies in [lo0, hi0].
    radius = np.zeros(n)
    radius[: n - 1] += np.abs(e[: n - 1])
    radius[1:] += np.abs(e[: n - 1])
    lo0 = float(np.min(d - radius))
    hi0 = float(np.max(d + radius))
    # Open the bracket slightly so the extreme eigenvalues are interior.
    span = max(hi0 - lo0, 1.0)
    lo0 -= 1e-12 * span
    hi0 += 1e-12 * span
    idx = np.ascontiguousarray(indices, dtype=np.int64)
    if tol <= 0.0:
        tol = 4.0 * _EPS * max(abs(lo0), abs(hi0))
    if NUMBA_ENABLED:
        return _bisect_loops(d, e, lo0, hi0, idx, tol)
    return _bisect_numpy(d, e, lo0, hi0, idx, tol)


# ---------------------------------------------------------------------------
# Finite Fourier transform quadrature sums
#
# out[p] = sum_m exp(1j * csign * <points[p], nodes[m]>) * wf[m]
# with wf the (complex) node values premultiplied by the quadrature weights.
# ---------------------------------------------------------------------------

_CHUNK_ENTRIES = 4_000_000  # ~64 MB of complex128 phase matrix per chunk


@njit(cache=True, parallel=True)
def _ft_scalar_loops(points, nodes, wf, csign):
    np_pts = points.shape[0]
    nm = nodes.shape[0]
    out = np.empty(np_pts, dtype=np.complex128)
    for p in prange(np_pts):
        x0 = points[p, 0]
        x1 = points[p, 1]
        x2 = points[p, 2]
        acc = 0.0 + 0.0j
        for m in range(nm):
            t = csign * (x0 * nodes[m, 0] + x1 * nodes[m, 1] + x2 * nodes[m, 2])
            acc += complex(np.cos(t), np.sin(t)) * wf[m]
        out[p] = acc
    return out


@njit(cache=True, parallel=True)
def _ft_vector_loops(points, nodes, wf, csign):
    np_pts = points.shape[0]
    nm = nodes.shape[0]
    out = np.empty((np_pts, 3), dtype=np.complex128)
    for p in prange(np_pts):
        x0 = points[p, 0]
        x1 = points[p, 1]
        x2 = points[p, 2]
        a0 = 0.0 + 0.0j
        a1 = 0.0 + 0.0j
        a2 = 0.0 + 0.0j
        for m in range(nm):
            t = csign * (x0 * nodes[m, 0] + x1 * nodes[m, 1] + x2 * nodes[m, 2])
            ph = complex(np.cos(t), np.sin(t))
            a0 += ph * wf[m, 0]
            a1 += ph * wf[m, 1]
            a2 += ph * wf[m, 2]
        out[p, 0] = a0
        out[p, 1] = a1
        out[p, 2] = a2
    return out


def _ft_numpy(points, nodes, wf, csign):
    np_pts = points.shape[0]
    nm = nodes.shape[0]
    vec = wf.ndim == 2
    out = np.empty((np_pts, 3) if vec else (np_pts,), dtype=np.complex128)
    step = max(1, _CHUNK_ENTRIES // max(nm, 1))
    for start in range(0, np_pts, step):
        stop = min(start + step, np_pts)
        phase = np.exp((1j * csign) * (points[start:stop] @ nodes.T))
        out[start:stop] = phase @ wf
    return out


def fourier_sum(points, nodes, weighted_values, csign):
    """Quadrature sum of exp(1j*csign*<x, tau>) against weighted node values.

    ``weighted_values`` is ``weights * field(nodes)`` with shape (M,) for a
    scalar field or (M, 3) for a vector field; the result mirrors that shape
    with leading dimension ``len(points)``.
    """
    points = np.ascontiguousarray(points, dtype=np.float64)
    nodes = np.ascontiguousarray(nodes, dtype=np.float64)
    wf = np.ascontiguousarray(weighted_values, dtype=np.complex128)
    if NUMBA_ENABLED:
        if wf.ndim == 2:
            return _ft_vector_loops(points, nodes, wf, csign)
        return _ft_scalar_loops(points, nodes, wf, csign)
    return _ft_numpy(points, nodes, wf, csign)
