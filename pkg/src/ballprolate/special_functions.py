"""Normalized Jacobi polynomials, real spherical harmonics, and the three
families of vector spherical harmonics.

Conventions
-----------
The Jacobi family ``J_k`` is normalized so that its Gram matrix under the
weight ``(1-eta)^alpha (1+eta)^beta`` on (-1, 1) equals ``2^(alpha+beta+2) I``.
Spherical harmonics are the real (cos/sin) family; with the normalization
above they are orthonormal on the unit sphere.  The unit-sphere frame is

    xhat   = (sin t cos p, sin t sin p, cos t)
    thhat  = (cos t cos p, cos t sin p, -sin t)
    phhat  = (-sin p, cos p, 0)

for polar angle t and azimuth p.
"""

import math
from dataclasses import dataclass

import numpy as np

from . import kernels
from .errors import ParameterError, PoleError

__all__ = [
    "JacobiParams",
    "SphericalIndex",
    "SphericalDirection",
    "recurrence_coeffs",
    "jacobi_norm",
    "jacobi_seeds",
    "jacobi_eval",
    "jacobi_derivative",
    "jacobi_batch",
    "spherical_harmonic",
    "spherical_harmonic_grad",
    "vector_spherical_harmonic",
]

_SIN_POLE_TOL = 1e-13


@dataclass(frozen=True)
class JacobiParams:
    """Weight exponents of the Jacobi family; both must exceed -1."""

    alpha: float
    beta: float

    def __post_init__(self):
        if not (self.alpha > -1.0 and self.beta > -1.0):
            raise ParameterError(
                f"Jacobi exponents must exceed -1, got ({self.alpha}, {self.beta})"
            )


@dataclass(frozen=True)
class SphericalIndex:
    """Harmonic degree n >= 0 and mode index 1 <= ell <= 2n+1."""

    n: int
    ell: int

    def __post_init__(self):
        if self.n < 0:
            raise ParameterError(f"degree must be nonnegative, got n={self.n}")
        if not (1 <= self.ell <= 2 * self.n + 1):
            raise ParameterError(
                f"mode index out of range: ell={self.ell} for n={self.n}"
            )


@dataclass(frozen=True)
class SphericalDirection:
    """A point on the unit sphere in polar coordinates."""

    theta: float
    phi: float


def recurrence_coeffs(k, p: JacobiParams):
    """Three-term recurrence coefficients (a_k, b_k) of the normalized family.

    The k = 0 values are the continuous limits of the general closed forms
    (the factors (k+alpha+beta+1)/(2k+alpha+beta+1) and (alpha+beta) cancel
    there, which matters when alpha + beta = 0 or -1).
    """
    if k < 0:
        raise ParameterError(f"recurrence index must be nonnegative, got {k}")
    al, be = p.alpha, p.beta
    s = al + be
    if k == 0:
        a = math.sqrt(4.0 * (al + 1.0) * (be + 1.0) / ((s + 2.0) ** 2 * (s + 3.0)))
        b = (be - al) / (s + 2.0)
        return a, b
    a = math.sqrt(
        4.0 * (k + 1.0) * (k + al + 1.0) * (k + be + 1.0) * (k + s + 1.0)
        / ((2.0 * k + s + 1.0) * (2.0 * k + s + 2.0) ** 2 * (2.0 * k + s + 3.0))
    )
    b = (be * be - al * al) / ((2.0 * k + s) * (2.0 * k + s + 2.0))
    return a, b


def jacobi_norm(k, p: JacobiParams):
    """The scale h_k with J_0 = 1/h_0; computed through log-gammas."""
    al, be = p.alpha, p.beta
    lg = (
        math.lgamma(k + al + 1.0)
        + math.lgamma(k + be + 1.0)
        - math.lgamma(k + 1.0)
        - math.lgamma(k + al + be + 1.0)
    )
    return math.exp(0.5 * lg) / math.sqrt(2.0 * (2.0 * k + al + be + 1.0))


def jacobi_seeds(p: JacobiParams):
    """Seed data (j0, j1_linear, j1_const) with J_1 = j1_linear*eta + j1_const."""
    j0 = 1.0 / jacobi_norm(0, p)
    h1 = jacobi_norm(1, p)
    return j0, (p.alpha + p.beta + 2.0) / (2.0 * h1), (p.alpha - p.beta) / (2.0 * h1)


def _coeff_arrays(kmax, p: JacobiParams):
    a = np.empty(max(kmax, 1))
    b = np.empty(max(kmax, 1))
    for k in range(max(kmax, 1)):
        a[k], b[k] = recurrence_coeffs(k, p)
    return a, b


def jacobi_batch(kmax, p: JacobiParams, eta):
    """Table of J_0..J_kmax at the points ``eta``, shape (kmax+1, len(eta))."""
    eta = np.atleast_1d(np.asarray(eta, dtype=np.float64))
    if np.any(np.abs(eta) > 1.0):
        raise ParameterError("Jacobi argument must lie in [-1, 1]")
    a, b = _coeff_arrays(kmax, p)
    j0, j1l, j1c = jacobi_seeds(p)
    return kernels.jacobi_table(eta, a, b, j0, j1l, j1c, kmax)


def jacobi_eval(k, p: JacobiParams, eta):
    """Value of J_k at ``eta`` (scalar or array) by forward recurrence."""
    scalar = np.isscalar(eta)
    table = jacobi_batch(k, p, eta)
    return float(table[k, 0]) if scalar else table[k]


def jacobi_derivative(k, p: JacobiParams, eta):
    """d/deta J_k, carried alongside the value recurrence."""
    scalar = np.isscalar(eta)
    eta_arr = np.atleast_1d(np.asarray(eta, dtype=np.float64))
    if np.any(np.abs(eta_arr) > 1.0):
        raise ParameterError("Jacobi argument must lie in [-1, 1]")
    coef = np.zeros(k + 1)
    coef[k] = 1.0
    a, b = _coeff_arrays(k, p)
    j0, j1l, j1c = jacobi_seeds(p)
    out = kernels.jacobi_series(eta_arr, coef, a, b, j0, j1l, j1c)
    return float(out[1, 0]) if scalar else out[1]


def jacobi_series_derivs(coef, p: JacobiParams, eta):
    """(f, f', f'') for f = sum_k coef[k] J_k at the points ``eta``."""
    eta = np.atleast_1d(np.asarray(eta, dtype=np.float64))
    a, b = _coeff_arrays(len(coef) - 1, p)
    j0, j1l, j1c = jacobi_seeds(p)
    return kernels.jacobi_series(eta, coef, a, b, j0, j1l, j1c)


# ---------------------------------------------------------------------------
# Real spherical harmonics.  ell = 1 is the zonal mode; ell = 2m / 2m+1 are
# the cos(m phi) / sin(m phi) modes built on the (m, m) Jacobi family.
# ---------------------------------------------------------------------------


def _mode_split(idx: SphericalIndex):
    # Returns (m, trig) with trig = 0 zonal, +1 cosine, -1 sine.
    if idx.ell == 1:
        return 0, 0
    m = idx.ell // 2
    return m, (1 if idx.ell % 2 == 0 else -1)


def _angular_parts(idx: SphericalIndex, theta, phi, want_grad):
    """Y and optionally (dY/dtheta, dY/dphi) on arrays of directions."""
    n = idx.n
    m, trig = _mode_split(idx)
    ct = np.cos(theta)
    st = np.sin(theta)
    if trig == 0:
        scale = 1.0 / math.sqrt(8.0 * math.pi)
        table = jacobi_batch(n, JacobiParams(0.0, 0.0), ct)
        val = scale * table[n]
        if not want_grad:
            return val, None, None
        dj = jacobi_series_derivs(_unit(n), JacobiParams(0.0, 0.0), ct)[1]
        return val, -scale * st * dj, np.zeros_like(val)
    scale = 1.0 / (2.0 ** (m + 1) * math.sqrt(math.pi))
    pjac = JacobiParams(float(m), float(m))
    table = jacobi_batch(n - m, pjac, ct)
    radial = table[n - m]
    stm = st**m
    azi = np.cos(m * phi) if trig > 0 else np.sin(m * phi)
    val = scale * stm * radial * azi
    if not want_grad:
        return val, None, None
    dj = jacobi_series_derivs(_unit(n - m), pjac, ct)[1]
    dtheta = scale * (m * st ** (m - 1) * ct * radial - stm * st * dj) * azi
    dazi = -m * np.sin(m * phi) if trig > 0 else m * np.cos(m * phi)
    dphi = scale * stm * radial * dazi
    return val, dtheta, dphi


def _unit(k):
    coef = np.zeros(k + 1)
    coef[k] = 1.0
    return coef


def spherical_harmonic(idx: SphericalIndex, direction: SphericalDirection):
    """Real spherical harmonic Y^n_ell at a direction (r = 1)."""
    val, _, _ = _angular_parts(
        idx, np.atleast_1d(direction.theta), np.atleast_1d(direction.phi), False
    )
    return float(val[0])


def spherical_harmonic_grad(idx: SphericalIndex, direction: SphericalDirection):
    """Angular partials (dY/dtheta, dY/dphi).

    The partials themselves have finite limits everywhere (the sin(theta)
    powers multiply, never divide), so poles are admitted here; only the
    1/sin(theta) combinations of the family-2/3 harmonics reject them.
    """
    theta = np.atleast_1d(direction.theta)
    _, dth, dph = _angular_parts(idx, theta, np.atleast_1d(direction.phi), True)
    return float(dth[0]), float(dph[0])


def sph_frame(theta, phi):
    """Orthonormal frame (xhat, thhat, phhat), each shaped (..., 3)."""
    st, ct = np.sin(theta), np.cos(theta)
    sp, cp = np.sin(phi), np.cos(phi)
    xhat = np.stack([st * cp, st * sp, ct], axis=-1)
    thhat = np.stack([ct * cp, ct * sp, -st], axis=-1)
    phhat = np.stack([-sp, cp, np.zeros_like(sp)], axis=-1)
    return xhat, thhat, phhat


def vsh_batch(idx: SphericalIndex, family, theta, phi):
    """Vector spherical harmonic of one family on direction arrays, (..., 3)."""
    theta = np.asarray(theta, dtype=np.float64)
    phi = np.asarray(phi, dtype=np.float64)
    if family not in (1, 2, 3):
        raise ParameterError(f"family must be 1, 2 or 3, got {family}")
    if family in (2, 3):
        if idx.n == 0:
            # gradient of the constant harmonic: identically zero
            return np.zeros(np.broadcast(theta, phi).shape + (3,))
        if np.any(np.abs(np.sin(theta)) < _SIN_POLE_TOL):
            raise PoleError("vector harmonics of family 2/3 rejected on the axis")
    xhat, thhat, phhat = sph_frame(theta, phi)
    if family == 1:
        val, _, _ = _angular_parts(idx, theta, phi, False)
        return xhat * val[..., None]
    val, dth, dph = _angular_parts(idx, theta, phi, True)
    dph_over_sin = dph / np.sin(theta)
    if family == 2:
        # surface gradient: thhat dY/dt + phhat (1/sin t) dY/dp
        return thhat * dth[..., None] + phhat * dph_over_sin[..., None]
    # family 3: xhat x grad = phhat dY/dt - thhat (1/sin t) dY/dp
    return phhat * dth[..., None] - thhat * dph_over_sin[..., None]


def vector_spherical_harmonic(idx: SphericalIndex, family, direction: SphericalDirection):
    """One vector spherical harmonic value in Cartesian components."""
    out = vsh_batch(
        idx, family, np.atleast_1d(direction.theta), np.atleast_1d(direction.phi)
    )
    return out[0]
