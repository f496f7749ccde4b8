"""Independent numerical oracles for the test suite.

Nothing here shares code with the package's solvers: the eigensolver is a
dense cyclic Jacobi rotation sweep on the full matrix, and the derivative
checks are plain central differences.
"""

import numpy as np


def dense_from_tridiagonal(diag, off):
    n = len(diag)
    A = np.diag(np.asarray(diag, dtype=float))
    for i in range(n - 1):
        A[i, i + 1] = A[i + 1, i] = off[i]
    return A


def jacobi_rotation_eigvals(A, tol=1e-15, max_sweeps=60):
    """Eigenvalues of a symmetric matrix by cyclic Jacobi rotations."""
    A = np.array(A, dtype=float)
    n = A.shape[0]
    if n == 1:
        return np.diag(A).copy()
    scale = max(1.0, np.abs(A).max())
    for _ in range(max_sweeps):
        strict_lower = np.tril(A, -1)
        if np.abs(strict_lower).max() <= tol * scale:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = A[p, q]
                if abs(apq) <= tol * scale:
                    continue
                theta = 0.5 * (A[q, q] - A[p, p]) / apq
                t = np.sign(theta) if theta != 0.0 else 1.0
                t /= abs(theta) + np.hypot(theta, 1.0)
                c = 1.0 / np.sqrt(1.0 + t * t)
                s = t * c
                app, aqq = A[p, p], A[q, q]
                colp = A[:, p].copy()
                colq = A[:, q].copy()
                A[:, p] = c * colp - s * colq
                A[:, q] = s * colp + c * colq
                rowp = A[p, :].copy()
                rowq = A[q, :].copy()
                A[p, :] = c * rowp - s * rowq
                A[q, :] = s * rowp + c * rowq
                A[p, p] = app - t * apq
                A[q, q] = aqq + t * apq
                A[p, q] = A[q, p] = 0.0
    return np.sort(np.diag(A))


def central_diff(f, x, h=1e-6):
    return (f(x + h) - f(x - h)) / (2.0 * h)


def fd_gradient(f, x, h=1e-6):
    out = np.empty(3)
    for i in range(3):
        e = np.zeros(3)
        e[i] = h
        out[i] = (f(x + e) - f(x - e)) / (2.0 * h)
    return out
