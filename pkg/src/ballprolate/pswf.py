"""Evaluation of scalar and divergence-free vectorial prolate functions on
the unit ball, plus the differential-operator applications used to verify
their eigen-relations.

A scalar mode is ``psi(x) = f(2 r^2 - 1) r^n Y^n_ell(xhat)`` with ``f`` the
Jacobi-coefficient series solved by :mod:`ballprolate.bouwkamp`; the
divergence-free vector mode is ``(x cross grad) psi``, which leaves the
radial factor untouched and rotates the angular factor into the third
vector-harmonic family.
"""

import math
from dataclasses import dataclass

import numpy as np

from . import bouwkamp
from .errors import DomainError, ParameterError, PoleError
from .special_functions import (
    JacobiParams,
    SphericalIndex,
    _angular_parts,
    jacobi_series_derivs,
    sph_frame,
)

__all__ = [
    "ModeIndex",
    "ScalarPswf",
    "VectorPswf",
    "scalar_eval",
    "vector_eval",
    "apply_L_radial",
    "apply_L_fd",
    "apply_D_fd",
    "divergence_fd",
    "fd_divergence_of",
]

_AXIS_TOL = 1e-12
_BALL_TOL = 1e-12


@dataclass(frozen=True)
class ModeIndex:
    """The quadruple (alpha, c, n, k) plus angular index ell."""

    alpha: float
    c: float
    n: int
    k: int
    ell: int

    def __post_init__(self):
        if self.alpha <= -1.0:
            raise ParameterError(f"alpha must exceed -1, got {self.alpha}")
        if self.c < 0.0:
            raise ParameterError(f"bandwidth must be nonnegative, got {self.c}")
        if self.k < 0:
            raise ParameterError(f"radial index must be nonnegative, got {self.k}")
        SphericalIndex(self.n, self.ell)  # validates the (n, ell) range

    @property
    def spherical(self):
        return SphericalIndex(self.n, self.ell)


@dataclass(frozen=True)
class ScalarPswf:
    mode: ModeIndex
    radial: bouwkamp.RadialExpansion

    def __post_init__(self):
        r = self.radial
        m = self.mode
        if (r.alpha, r.c, r.n, r.k) != (m.alpha, m.c, m.n, m.k):
            raise ParameterError("radial expansion does not match the mode index")

    @classmethod
    def solve(cls, mode: ModeIndex):
        radial = bouwkamp.radial_expansion(
            mode.alpha, mode.c, mode.n, mode.k, scalar=(mode.n == 0)
        )
        return cls(mode, radial)

    @property
    def chi(self):
        return self.radial.chi


@dataclass(frozen=True)
class VectorPswf:
    scalar: ScalarPswf

    def __post_init__(self):
        if self.scalar.mode.n < 1:
            raise ParameterError("divergence-free modes require degree n >= 1")

    @classmethod
    def solve(cls, mode: ModeIndex):
        return cls(ScalarPswf.solve(mode))

    @property
    def mode(self):
        return self.scalar.mode

    @property
    def chi(self):
        return self.scalar.chi


def _as_points(x):
    pts = np.atleast_2d(np.asarray(x, dtype=np.float64))
    if pts.shape[-1] != 3:
        raise ParameterError("points must have three Cartesian components")
    return pts, np.asarray(x).ndim == 1


def _radial_series(s: ScalarPswf, eta):
    params = JacobiParams(s.mode.alpha, s.mode.n + 0.5)
    return jacobi_series_derivs(s.radial.beta, params, eta)


def _spherical_angles(pts, r):
    safe = np.where(r > 0.0, r, 1.0)
    ct = np.clip(pts[:, 2] / safe, -1.0, 1.0)
    theta = np.arccos(ct)
    phi = np.arctan2(pts[:, 1], pts[:, 0])
    return theta, phi


def scalar_eval(s: ScalarPswf, x):
    """Scalar mode value at one point or an (P, 3) batch."""
    pts, single = _as_points(x)
    r = np.linalg.norm(pts, axis=1)
    if np.any(r > 1.0 + _BALL_TOL):
        raise DomainError("evaluation point outside the closed unit ball")
    eta = np.clip(2.0 * r * r - 1.0, -1.0, 1.0)
    f = _radial_series(s, eta)[0]
    theta, phi = _spherical_angles(pts, r)
    y, _, _ = _angular_parts(s.mode.spherical, theta, phi, False)
    n = s.mode.n
    out = f * r**n * y
    if n >= 1:
        out = np.where(r == 0.0, 0.0, out)
    else:
        # constant harmonic: the angular factor at the origin is 1/(2 sqrt(pi))
        origin = f / (2.0 * math.sqrt(math.pi))
        out = np.where(r == 0.0, origin, out)
    return float(out[0]) if single else out


def vector_eval(v: VectorPswf, x):
    """Divergence-free mode value, Cartesian components.

    Points on the polar axis are rejected (the spherical frame degenerates
    there) except the origin, where the r^n factor forces the exact value 0.
    """
    pts, single = _as_points(x)
    r = np.linalg.norm(pts, axis=1)
    if np.any(r > 1.0 + _BALL_TOL):
        raise DomainError("evaluation point outside the closed unit ball")
    rho = np.hypot(pts[:, 0], pts[:, 1])
    on_axis = (rho <= _AXIS_TOL) & (r > 0.0)
    if np.any(on_axis):
        raise PoleError("vector evaluation rejected on the polar axis")
    at_origin = r == 0.0
    safe_pts = np.where(at_origin[:, None], [[0.5, 0.0, 0.0]], pts)
    rr = np.where(at_origin, 0.5, r)
    eta = np.clip(2.0 * rr * rr - 1.0, -1.0, 1.0)
    f = _radial_series(v.scalar, eta)[0]
    theta, phi = _spherical_angles(safe_pts, rr)
    idx = v.mode.spherical
    _, dth, dph = _angular_parts(idx, theta, phi, True)
    _, thhat, phhat = sph_frame(theta, phi)
    angular = phhat * dth[:, None] - thhat * (dph / np.sin(theta))[:, None]
    out = (f * rr ** v.mode.n)[:, None] * angular
    out[at_origin] = 0.0
    return out[0] if single else out


def apply_L_radial(s: ScalarPswf, r):
    """Analytic application of the radial Sturm-Liouville operator.

    For g(r) = f(2 r^2 - 1) r^n the operator

        -(1-r^2) g'' - (2/r) g' + (2 alpha + 4) r g' + n(n+1)/r^2 g + c^2 r^2 g

    collapses (chain rule through eta = 2 r^2 - 1, no negative powers left) to

        r^n [ (n(n+2a+3) + c^2 r^2) f
              + (-(8n+12) + (8n+8a+20) r^2) f' + 16 r^2 (r^2-1) f'' ].

    The contract is that this equals chi * g(r).
    """
    r = np.asarray(r, dtype=np.float64)
    single = r.ndim == 0
    r = np.atleast_1d(r)
    if np.any((r <= 0.0) | (r >= 1.0)):
        raise DomainError("radius must lie strictly inside (0, 1)")
    eta = 2.0 * r * r - 1.0
    f, f1, f2 = _radial_series(s, eta)
    n, alpha, c = s.mode.n, s.mode.alpha, s.mode.c
    r2 = r * r
    out = r**n * (
        (n * (n + 2.0 * alpha + 3.0) + c * c * r2) * f
        + (-(8.0 * n + 12.0) + (8.0 * n + 8.0 * alpha + 20.0) * r2) * f1
        + 16.0 * r2 * (r2 - 1.0) * f2
    )
    return float(out[0]) if single else out


def radial_profile(s: ScalarPswf, r):
    """g(r) = f(2 r^2 - 1) r^n, the radial factor of the mode."""
    r = np.atleast_1d(np.asarray(r, dtype=np.float64))
    eta = np.clip(2.0 * r * r - 1.0, -1.0, 1.0)
    return _radial_series(s, eta)[0] * r**s.mode.n


# ---------------------------------------------------------------------------
# Finite-difference operator applications (second-order central stencils).
# ---------------------------------------------------------------------------

_EYE = np.eye(3)


def _check_stencil(x, h):
    if np.linalg.norm(x) + 2.0 * h >= 1.0:
        raise DomainError("finite-difference stencil leaves the unit ball")
    if math.hypot(x[0], x[1]) <= 2.0 * h:
        raise PoleError("finite-difference stencil too close to the polar axis")


def _field_partials(field, x, h):
    """value, Jacobian J[i, j] = d_j field_i, and second partials H[i, j, :]."""
    offsets = [x]
    for j in range(3):
        offsets.append(x + h * _EYE[j])
        offsets.append(x - h * _EYE[j])
    for a in range(3):
        for b in range(a + 1, 3):
            offsets.append(x + h * (_EYE[a] + _EYE[b]))
            offsets.append(x + h * (_EYE[a] - _EYE[b]))
            offsets.append(x + h * (-_EYE[a] + _EYE[b]))
            offsets.append(x - h * (_EYE[a] + _EYE[b]))
    vals = field(np.array(offsets))
    v0 = vals[0]
    plus = vals[1:7:2]
    minus = vals[2:7:2]
    jac = np.empty((3, 3), dtype=vals.dtype)
    second = np.empty((3, 3, 3), dtype=vals.dtype)
    for j in range(3):
        jac[:, j] = (plus[j] - minus[j]) / (2.0 * h)
        second[:, j, j] = (plus[j] - 2.0 * v0 + minus[j]) / (h * h)
    pos = 7
    for a in range(3):
        for b in range(a + 1, 3):
            pp, pm, mp, mm = vals[pos : pos + 4]
            mixed = (pp - pm - mp + mm) / (4.0 * h * h)
            second[:, a, b] = mixed
            second[:, b, a] = mixed
            pos += 4
    return v0, jac, second


def _laplace_beltrami_fd(field, x, h):
    # Delta_0 = |x|^2 Delta - sum_ij x_i x_j d2_ij - 2 (x . grad), componentwise
    v0, jac, second = _field_partials(field, x, h)
    r2 = float(x @ x)
    lap = second[:, 0, 0] + second[:, 1, 1] + second[:, 2, 2]
    quad = np.einsum("i,j,kij->k", x, x, second)
    xdg = jac @ x
    return r2 * lap - quad - 2.0 * xdg, v0


def apply_L_fd(v: VectorPswf, x, h=1e-4):
    """Componentwise FD application of the full first-kind operator.

    Uses the expanded polynomial-coefficient form
    -Delta + sum x_i x_j d2_ij + (2 alpha + 4)(x . grad) + c^2 |x|^2.
    """
    x = np.asarray(x, dtype=np.float64)
    _check_stencil(x, h)
    v0, jac, second = _field_partials(lambda p: vector_eval(v, p), x, h)
    alpha, c = v.mode.alpha, v.mode.c
    r2 = float(x @ x)
    lap = second[:, 0, 0] + second[:, 1, 1] + second[:, 2, 2]
    quad = np.einsum("i,j,kij->k", x, x, second)
    xdg = jac @ x
    return -lap + quad + (2.0 * alpha + 4.0) * xdg + c * c * r2 * v0


def apply_D_fd(v: VectorPswf, x, h=1e-3):
    """FD application of the curl-curl (second-kind) operator.

    Applies (1-|x|^2)^(-alpha) curl [(1-|x|^2)^(alpha+1) curl u] by nested
    central differences, then subtracts the Laplace-Beltrami part and adds
    c^2 |x|^2 u.  The contract is a result of (chi + 2 alpha + 2) * u with
    O(h^2) error.
    """
    x = np.asarray(x, dtype=np.float64)
    _check_stencil(x, h)
    alpha, c = v.mode.alpha, v.mode.c

    def curl_u(y):
        _, jac, _ = _field_partials(lambda p: vector_eval(v, p), y, h)
        return np.array(
            [jac[2, 1] - jac[1, 2], jac[0, 2] - jac[2, 0], jac[1, 0] - jac[0, 1]]
        )

    def weighted_curl(y):
        w = (1.0 - float(y @ y)) ** (alpha + 1.0)
        return w * curl_u(y)

    outer = np.empty((3, 3))  # outer[j] = d_j of weighted curl (3-vector)
    for j in range(3):
        outer[j] = (weighted_curl(x + h * _EYE[j]) - weighted_curl(x - h * _EYE[j])) / (
            2.0 * h
        )
    curl_w = np.array(
        [outer[1, 2] - outer[2, 1], outer[2, 0] - outer[0, 2], outer[0, 1] - outer[1, 0]]
    )
    r2 = float(x @ x)
    lb, v0 = _laplace_beltrami_fd(lambda p: vector_eval(v, p), x, h)
    return (1.0 - r2) ** (-alpha) * curl_w - lb + c * c * r2 * v0


def fd_divergence_of(field, x, h):
    """Central-difference divergence of an arbitrary vector field callable."""
    x = np.asarray(x, dtype=np.float64)
    offsets = []
    for j in range(3):
        offsets.append(x + h * _EYE[j])
        offsets.append(x - h * _EYE[j])
    vals = field(np.array(offsets))
    div = 0.0
    for j in range(3):
        div += (vals[2 * j, j] - vals[2 * j + 1, j]) / (2.0 * h)
    return div


def divergence_fd(v: VectorPswf, x, h=1e-4):
    """FD divergence of the mode; bounded by the stencil truncation error."""
    x = np.asarray(x, dtype=np.float64)
    _check_stencil(x, h)
    return float(fd_divergence_of(lambda p: vector_eval(v, p), x, h))
