"""Assembly and solution of the symmetric tridiagonal eigenproblem for the
radial expansion coefficients.

For degree n and bandwidth c, the radial profile expanded in the normalized
Jacobi family with parameters (alpha, n + 1/2) turns the differential
eigenproblem into ``(A - chi I) beta = 0`` with

    A[j, j]   = gamma_(n+2j) + (b_j + 1) c^2 / 2
    A[j, j+1] = a_j c^2 / 2            (symmetric)

where gamma_m = m (m + 2 alpha + 3) and (a_j, b_j) are the recurrence
coefficients at (alpha, n + 1/2).  At c = 0 the matrix is diagonal and the
spectrum reduces to the gamma values exactly.
"""

import math
from dataclasses import dataclass, field

import numpy as np

from . import kernels
from .errors import ParameterError
from .special_functions import JacobiParams, recurrence_coeffs

__all__ = [
    "TridiagonalMatrix",
    "RadialExpansion",
    "ModeTable",
    "gamma_eigenvalue",
    "truncation_order",
    "build_matrix",
    "eigen_tridiagonal",
    "residual",
    "solve_modes",
    "radial_expansion",
]

#: eigenvector tail bound enforced on every reported mode
TAIL_TOL = 1e-12
#: agreement required between the QL sweep and the bisection fallback
CROSS_CHECK_TOL = 1e-11
_CROSS_CHECK_COUNT = 4


@dataclass(frozen=True)
class TridiagonalMatrix:
    diag: np.ndarray
    off: np.ndarray

    def __post_init__(self):
        if len(self.off) != max(len(self.diag) - 1, 0):
            raise ParameterError("off-diagonal length must be order - 1")

    @property
    def order(self):
        return len(self.diag)

    def norm(self):
        """Infinity norm; used to scale residual tolerances."""
        n = self.order
        rows = np.abs(self.diag).astype(float)
        if n > 1:
            rows[:-1] += np.abs(self.off)
            rows[1:] += np.abs(self.off)
        return float(rows.max()) if n else 0.0

    def matvec(self, v):
        out = self.diag * v
        if self.order > 1:
            out[:-1] += self.off * v[1:]
            out[1:] += self.off * v[:-1]
        return out


@dataclass(frozen=True)
class RadialExpansion:
    """One eigenpair: Jacobi coefficients ``beta`` with eigenvalue ``chi``."""

    alpha: float
    c: float
    n: int
    k: int
    chi: float
    beta: np.ndarray

    @property
    def truncation(self):
        return len(self.beta) - 1


@dataclass
class ModeTable:
    alpha: float
    c: float
    N: int
    entries: dict = field(default_factory=dict)

    def __getitem__(self, nk):
        return self.entries[nk]

    def modes(self):
        return sorted(self.entries)


def gamma_eigenvalue(m, alpha):
    """Ball-polynomial eigenvalue m (m + 2 alpha + 3)."""
    return m * (m + 2.0 * alpha + 3.0)


def truncation_order(N, alpha, n):
    """Expansion cap K for a requested resolution N (coefficients run 0..K).

    The cutoff rule is M = 2N + 2 alpha + 30, rounded up through the
    ceiling of 2 alpha when alpha is not an integer.
    """
    M = 2 * N + math.ceil(2.0 * alpha) + 30
    return math.ceil((M - n) / 2)


def build_matrix(n, alpha, c, K, scalar=False):
    """The (K+1) x (K+1) symmetric tridiagonal matrix for degree n."""
    if alpha <= -1.0:
        raise ParameterError(f"alpha must exceed -1, got {alpha}")
    if c < 0.0:
        raise ParameterError(f"bandwidth must be nonnegative, got {c}")
    if K < 0:
        raise ParameterError(f"truncation must be nonnegative, got {K}")
    if n < 0 or (n == 0 and not scalar):
        raise ParameterError(
            "degree n >= 1 required for the divergence-free family "
            "(pass scalar=True for scalar n = 0 modes)"
        )
    params = JacobiParams(float(alpha), n + 0.5)
    half_c2 = 0.5 * c * c
    diag = np.empty(K + 1)
    off = np.empty(K)
    for j in range(K + 1):
        a, b = recurrence_coeffs(j, params)
        diag[j] = gamma_eigenvalue(n + 2 * j, alpha) + (b + 1.0) * half_c2
        if j < K:
            off[j] = a * half_c2
    return TridiagonalMatrix(diag, off)


def residual(T: TridiagonalMatrix, chi, vec):
    """Algebraic defect ||T v - chi v||_2."""
    vec = np.asarray(vec, dtype=float)
    if len(vec) != T.order:
        raise ParameterError("eigenvector length does not match matrix order")
    return float(np.linalg.norm(T.matvec(vec) - chi * vec))


def _fix_sign(vec):
    for x in vec:
        if x != 0.0:
            return vec if x > 0.0 else -vec
    return vec


def eigen_tridiagonal(T: TridiagonalMatrix, cross_check=True):
    """Full spectrum, ascending, with unit first-nonzero-positive eigenvectors.

    The QL sweep is cross-checked against Sturm-sequence bisection on the
    lowest eigenvalues; disagreement beyond ``CROSS_CHECK_TOL * ||T||``
    raises, since downstream mode tables key on eigenvalue order.
    """
    w, V = kernels.tridiag_eigh(T.diag, T.off)
    scale = max(T.norm(), 1.0)
    if cross_check and T.order > 1:
        count = min(_CROSS_CHECK_COUNT, T.order)
        wb = kernels.tridiag_eigvals_bisect(T.diag, T.off, np.arange(count))
        gap = np.max(np.abs(w[:count] - wb))
        if gap > CROSS_CHECK_TOL * scale:
            raise RuntimeError(
                f"QL and bisection eigenvalues disagree by {gap:.3e} "
                f"(allowed {CROSS_CHECK_TOL * scale:.3e})"
            )
    pairs = []
    for i in range(T.order):
        vec = _fix_sign(V[:, i].copy())
        vec /= np.linalg.norm(vec)
        pairs.append((float(w[i]), vec))
    return pairs


def _expansion_from_pair(alpha, c, n, k, chi, vec):
    tail = abs(vec[-1])
    if tail > TAIL_TOL * np.linalg.norm(vec):
        raise RuntimeError(
            f"truncation too small for mode (n={n}, k={k}): |beta_K| = {tail:.3e}"
        )
    return RadialExpansion(float(alpha), float(c), n, k, chi, vec)


def solve_modes(N, alpha, c, include_scalar=False):
    """Radial expansions for every mode with 2k + n <= N.

    Degrees run 1..N (0..N with ``include_scalar``); for each the matrix is
    built at the truncation rule's K and the lowest eigenpairs are kept.
    Eigenvalues must come out strictly increasing in k for each n.
    """
    if N < 1:
        raise ParameterError(f"resolution must be positive, got {N}")
    table = ModeTable(float(alpha), float(c), N)
    for n in range(0 if include_scalar else 1, N + 1):
        K = truncation_order(N, alpha, n)
        T = build_matrix(n, alpha, c, K, scalar=(n == 0))
        pairs = eigen_tridiagonal(T)
        kmax = (N - n) // 2
        prev = -math.inf
        for k in range(kmax + 1):
            chi, vec = pairs[k]
            if chi <= prev:
                raise RuntimeError(f"eigenvalues not increasing at (n={n}, k={k})")
            prev = chi
            table.entries[(n, k)] = _expansion_from_pair(alpha, c, n, k, chi, vec)
    return table


def radial_expansion(alpha, c, n, k, scalar=False):
    """Convenience solve for a single (n, k) mode at the standard truncation."""
    K = truncation_order(n + 2 * k, alpha, n)
    T = build_matrix(n, alpha, c, K, scalar=scalar)
    chi, vec = eigen_tridiagonal(T)[k]
    return _expansion_from_pair(alpha, c, n, k, chi, vec)
