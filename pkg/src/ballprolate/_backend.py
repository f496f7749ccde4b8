"""Execution-backend selection for the hot kernels.

Every kernel in :mod:`ballprolate.kernels` has two implementations: a
numba-compiled loop version and a vectorized pure-NumPy version.  The choice
is made once, at import time:

* ``BALLPROLATE_NUMBA=0`` (also ``off``/``false``/``numpy``) forces the
  NumPy path,
* anything else (including unset) uses numba whenever it is importable.

The flag selects an execution engine only; both paths implement the same
arithmetic and agree to floating-point reduction order.
"""

import os

__all__ = ["NUMBA_ENABLED", "njit", "prange"]


def _numba_requested() -> bool:
    value = os.environ.get("BALLPROLATE_NUMBA", "auto").strip().lower()
    return value not in ("0", "off", "false", "no", "numpy")


NUMBA_ENABLED = False
if _numba_requested():
    try:
        from numba import njit, prange  # noqa: F401

        NUMBA_ENABLED = True
    except ImportError:
        pass

if not NUMBA_ENABLED:
    # Identity decorator keeps the loop reference implementations importable
    # (and directly testable) when numba is absent or disabled.
    def njit(*args, **kwargs):
        def wrap(fn):
            return fn

        if args and callable(args[0]):
            return args[0]
        return wrap

    prange = range
