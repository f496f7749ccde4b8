"""Gauss rules on (-1, 1), tensor rules on the sphere, and weighted
quadrature on the unit ball.

Gauss-Jacobi nodes and weights come from Golub-Welsch applied to the same
recurrence coefficients that drive the polynomial evaluations, so the two
cross-validate each other.  Ball rules integrate

    int_B f(x) (1 - |x|^2)^alpha dx

exactly for polynomials f up to the joint degree of the rule: the radial
direction substitutes eta = 2 r^2 - 1 (absorbing r^2 dr into a Jacobi weight
(1-eta)^alpha (1+eta)^(1/2)), the polar direction is Gauss-Legendre in
cos(theta), and the azimuth is the equispaced trapezoid rule, which is the
Gauss rule for trigonometric polynomials.
"""

import math
from dataclasses import dataclass

import numpy as np

from . import kernels
from .errors import ParameterError
from .special_functions import JacobiParams, recurrence_coeffs

__all__ = [
    "QuadratureRule1D",
    "SphereRule",
    "BallQuadratureRule",
    "gauss_legendre",
    "gauss_jacobi",
    "sphere_rule",
    "ball_rule",
    "integrate",
]


@dataclass(frozen=True)
class QuadratureRule1D:
    nodes: np.ndarray
    weights: np.ndarray
    weight_kind: str

    def __post_init__(self):
        if np.any(np.diff(self.nodes) <= 0.0):
            raise ParameterError("quadrature nodes must be strictly increasing")
        if np.any(np.abs(self.nodes) >= 1.0):
            raise ParameterError("quadrature nodes must lie inside (-1, 1)")
        if np.any(self.weights <= 0.0):
            raise ParameterError("quadrature weights must be positive")


@dataclass(frozen=True)
class SphereRule:
    """Tensor rule on the unit sphere; weights sum to 4*pi."""

    points: np.ndarray  # (M, 3) unit vectors
    weights: np.ndarray  # (M,)
    theta: np.ndarray
    phi: np.ndarray


@dataclass(frozen=True)
class BallQuadratureRule:
    """Tensor rule for the measure (1 - |x|^2)^alpha dx on the unit ball."""

    alpha: float
    points: np.ndarray  # (M, 3), all strictly inside the ball, never on the axis
    weights: np.ndarray  # (M,)
    counts: tuple  # (m_r, m_theta, m_phi)


def _weight_total(p: JacobiParams):
    # int_{-1}^{1} (1-eta)^a (1+eta)^b deta = 2^(a+b+1) B(a+1, b+1)
    al, be = p.alpha, p.beta
    return math.exp(
        (al + be + 1.0) * math.log(2.0)
        + math.lgamma(al + 1.0)
        + math.lgamma(be + 1.0)
        - math.lgamma(al + be + 2.0)
    )


def gauss_jacobi(m, p: JacobiParams):
    """m-point Gauss-Jacobi rule for the weight (1-eta)^alpha (1+eta)^beta."""
    if m < 1:
        raise ParameterError(f"rule size must be positive, got {m}")
    diag = np.empty(m)
    off = np.empty(max(m - 1, 0))
    for k in range(m):
        a, b = recurrence_coeffs(k, p)
        diag[k] = b
        if k < m - 1:
            off[k] = a
    nodes, vectors = kernels.tridiag_eigh(diag, off)
    weights = _weight_total(p) * vectors[0, :] ** 2
    return QuadratureRule1D(nodes, weights, f"jacobi({p.alpha},{p.beta})")


def gauss_legendre(m):
    """m-point Gauss-Legendre rule on (-1, 1); exact to degree 2m-1."""
    rule = gauss_jacobi(m, JacobiParams(0.0, 0.0))
    return QuadratureRule1D(rule.nodes, rule.weights, "legendre")


def sphere_rule(m_theta, m_phi):
    """Gauss-Legendre x trapezoid tensor rule on the unit sphere."""
    if m_theta < 1 or m_phi < 1:
        raise ParameterError("sphere rule sizes must be positive")
    polar = gauss_legendre(m_theta)
    ct = polar.nodes
    theta = np.arccos(ct)
    phi = 2.0 * math.pi * np.arange(m_phi) / m_phi
    wphi = 2.0 * math.pi / m_phi
    tt, pp = np.meshgrid(theta, phi, indexing="ij")
    ww = np.repeat(polar.weights, m_phi) * wphi
    st = np.sin(tt).ravel()
    ctv = np.cos(tt).ravel()
    ppv = pp.ravel()
    points = np.stack([st * np.cos(ppv), st * np.sin(ppv), ctv], axis=-1)
    return SphereRule(points, ww, tt.ravel(), ppv)


def ball_rule(alpha, m_r, m_theta, m_phi):
    """Tensor rule for int_B f (1-|x|^2)^alpha dx.

    Radial nodes are Gauss-Jacobi in eta = 2 r^2 - 1 with parameters
    (alpha, 1/2); the (1+eta)^(1/2) factor and the 2^-(alpha+5/2) scale are
    what r^2 dr becomes under the substitution.
    """
    if alpha <= -1.0:
        raise ParameterError(f"weight exponent must exceed -1, got {alpha}")
    if min(m_r, m_theta, m_phi) < 1:
        raise ParameterError("ball rule sizes must be positive")
    radial = gauss_jacobi(m_r, JacobiParams(float(alpha), 0.5))
    r = np.sqrt(0.5 * (1.0 + radial.nodes))
    wr = radial.weights * 2.0 ** (-(alpha + 2.5))
    sphere = sphere_rule(m_theta, m_phi)
    points = (r[:, None, None] * sphere.points[None, :, :]).reshape(-1, 3)
    weights = (wr[:, None] * sphere.weights[None, :]).reshape(-1)
    return BallQuadratureRule(float(alpha), points, weights, (m_r, m_theta, m_phi))


def integrate(rule, f):
    """Sum w_i f(x_i); componentwise for vector-valued integrands.

    ``f`` is either a callable mapping an (M, 3) array of points to (M,) or
    (M, 3) values, or an already-evaluated value array of that shape.
    """
    values = f(rule.points) if callable(f) else np.asarray(f)
    if values.ndim == 1:
        return float(rule.weights @ values)
    return rule.weights @ values
