"""Scalar and divergence-free vectorial prolate spheroidal wave functions
on the unit ball, computed by a Jacobi-expansion tridiagonal eigensolver and
verified against their integral and differential eigen-relations.
"""

from ._backend import NUMBA_ENABLED
from .bouwkamp import (
    ModeTable,
    RadialExpansion,
    TridiagonalMatrix,
    build_matrix,
    eigen_tridiagonal,
    radial_expansion,
    residual,
    solve_modes,
)
from .pswf import ModeIndex, ScalarPswf, VectorPswf, scalar_eval, vector_eval
from .quadrature import (
    BallQuadratureRule,
    QuadratureRule1D,
    ball_rule,
    gauss_jacobi,
    gauss_legendre,
    integrate,
)
from .special_functions import (
    JacobiParams,
    SphericalDirection,
    SphericalIndex,
    jacobi_derivative,
    jacobi_eval,
    recurrence_coeffs,
    spherical_harmonic,
    spherical_harmonic_grad,
    vector_spherical_harmonic,
)

__version__ = "0.1.0"

__all__ = [
    "NUMBA_ENABLED",
    "JacobiParams",
    "SphericalIndex",
    "SphericalDirection",
    "recurrence_coeffs",
    "jacobi_eval",
    "jacobi_derivative",
    "spherical_harmonic",
    "spherical_harmonic_grad",
    "vector_spherical_harmonic",
    "QuadratureRule1D",
    "BallQuadratureRule",
    "gauss_legendre",
    "gauss_jacobi",
    "ball_rule",
    "integrate",
    "TridiagonalMatrix",
    "RadialExpansion",
    "ModeTable",
    "build_matrix",
    "eigen_tridiagonal",
    "residual",
    "solve_modes",
    "radial_expansion",
    "ModeIndex",
    "ScalarPswf",
    "VectorPswf",
    "scalar_eval",
    "vector_eval",
    "__version__",
]
