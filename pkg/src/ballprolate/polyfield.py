"""Exact trivariate polynomial calculus.

Polynomials are coefficient maps ``{(i, j, k): coeff}`` over monomials
``x^i y^j z^k``.  Differentiation, products, and the vector-calculus
operators built from them are all closed on this representation, so the
operator identities of the verification suite can be checked on the
coefficients themselves, with no evaluation error.
"""

import numpy as np

__all__ = [
    "Poly",
    "grad",
    "div",
    "curl",
    "x_cross_grad",
    "x_dot_grad",
    "laplacian",
    "laplace_beltrami",
    "x_cross",
    "x_dot",
    "scale_r2",
    "apply_L_scalar",
    "apply_L_vector",
    "apply_D_vector",
    "random_poly",
]


class Poly:
    """A trivariate polynomial with float coefficients."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=None):
        self.coeffs = {}
        if coeffs:
            for mono, c in coeffs.items():
                if c != 0.0:
                    self.coeffs[mono] = float(c)

    @classmethod
    def constant(cls, value):
        return cls({(0, 0, 0): value})

    @classmethod
    def monomial(cls, i, j, k, coeff=1.0):
        return cls({(i, j, k): coeff})

    def __add__(self, other):
        out = dict(self.coeffs)
        for mono, c in other.coeffs.items():
            out[mono] = out.get(mono, 0.0) + c
        return Poly(out)

    def __sub__(self, other):
        out = dict(self.coeffs)
        for mono, c in other.coeffs.items():
            out[mono] = out.get(mono, 0.0) - c
        return Poly(out)

    def __mul__(self, other):
        if isinstance(other, Poly):
            out = {}
            for (a, b, c), u in self.coeffs.items():
                for (d, e, f), v in other.coeffs.items():
                    mono = (a + d, b + e, c + f)
                    out[mono] = out.get(mono, 0.0) + u * v
            return Poly(out)
        return Poly({m: c * other for m, c in self.coeffs.items()})

    __rmul__ = __mul__

    def __neg__(self):
        return self * -1.0

    def diff(self, axis):
        out = {}
        for mono, c in self.coeffs.items():
            p = mono[axis]
            if p > 0:
                lowered = list(mono)
                lowered[axis] = p - 1
                out[tuple(lowered)] = out.get(tuple(lowered), 0.0) + c * p
        return Poly(out)

    def eval(self, points):
        points = np.atleast_2d(points)
        out = np.zeros(points.shape[0])
        for (i, j, k), c in self.coeffs.items():
            out += c * points[:, 0] ** i * points[:, 1] ** j * points[:, 2] ** k
        return out

    def max_abs_coeff(self):
        return max((abs(c) for c in self.coeffs.values()), default=0.0)

    def is_zero(self):
        return not self.coeffs


_X = Poly.monomial(1, 0, 0)
_Y = Poly.monomial(0, 1, 0)
_Z = Poly.monomial(0, 0, 1)
_COORDS = (_X, _Y, _Z)
_R2 = _X * _X + _Y * _Y + _Z * _Z


def vec_sub(u, v):
    return [a - b for a, b in zip(u, v)]


def max_abs_vec(u):
    return max(p.max_abs_coeff() for p in u)


def grad(u):
    return [u.diff(0), u.diff(1), u.diff(2)]


def div(v):
    return v[0].diff(0) + v[1].diff(1) + v[2].diff(2)


def curl(v):
    return [
        v[2].diff(1) - v[1].diff(2),
        v[0].diff(2) - v[2].diff(0),
        v[1].diff(0) - v[0].diff(1),
    ]


def x_cross(v):
    """Pointwise cross product x cross v(x)."""
    return [
        _Y * v[2] - _Z * v[1],
        _Z * v[0] - _X * v[2],
        _X * v[1] - _Y * v[0],
    ]


def x_dot(v):
    return _X * v[0] + _Y * v[1] + _Z * v[2]


def x_cross_grad(u):
    """(x cross grad) u, the angular-momentum style first-order operator."""
    return x_cross(grad(u))


def x_dot_grad(u):
    g = grad(u)
    return _X * g[0] + _Y * g[1] + _Z * g[2]


def laplacian(u):
    return u.diff(0).diff(0) + u.diff(1).diff(1) + u.diff(2).diff(2)


def scale_r2(u):
    return _R2 * u


def laplace_beltrami(u):
    """Delta_0 u = |x|^2 Delta u - (x.grad)(x.grad + 1) u."""
    xdg = x_dot_grad(u)
    return scale_r2(laplacian(u)) - x_dot_grad(xdg) - xdg


def apply_L_scalar(u, alpha, c):
    """First-kind operator in its expanded polynomial-coefficient form:

    -(1-|x|^2) Delta + 2(alpha+1) x.grad - Delta_0 + c^2 |x|^2.
    """
    lap = laplacian(u)
    return (
        -(lap - scale_r2(lap))
        + 2.0 * (alpha + 1.0) * x_dot_grad(u)
        - laplace_beltrami(u)
        + c * c * scale_r2(u)
    )


def apply_L_vector(v, alpha, c):
    return [apply_L_scalar(comp, alpha, c) for comp in v]


def apply_D_vector(v, alpha, c):
    """Second-kind (curl-curl) operator, expanded:

    (1-|x|^2) curl curl - 2(alpha+1) x cross curl - Delta_0 + c^2 |x|^2.
    """
    cc = curl(curl(v))
    xcc = x_cross(curl(v))
    out = []
    for i in range(3):
        term = (
            cc[i]
            - scale_r2(cc[i])
            - 2.0 * (alpha + 1.0) * xcc[i]
            - laplace_beltrami(v[i])
            + c * c * scale_r2(v[i])
        )
        out.append(term)
    return out


def random_poly(rng, degree):
    """Random polynomial of total degree <= degree with small integer coefficients.

    Integer coefficients keep every operator application exact in float64,
    so identity defects measure genuine algebraic failure, not roundoff.
    """
    coeffs = {}
    for i in range(degree + 1):
        for j in range(degree + 1 - i):
            for k in range(degree + 1 - i - j):
                c = int(rng.integers(-3, 4))
                if c:
                    coeffs[(i, j, k)] = float(c)
    return Poly(coeffs)
