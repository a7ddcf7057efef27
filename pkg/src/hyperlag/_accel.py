"""Optional numba acceleration.

Set ``HYPERLAG_DISABLE_NUMBA=1`` to force the pure-numpy kernels even when
numba is installed.
"""
import os

_DISABLED = os.environ.get("HYPERLAG_DISABLE_NUMBA", "").strip().lower() in {"1", "true", "yes", "on"}

try:
    if _DISABLED:
        raise ImportError
    import numba

    USE_NUMBA = True
except ImportError:
    numba = None
    USE_NUMBA = False


def njit(func):
    """``numba.njit(cache=True)`` when acceleration is on, identity otherwise."""
    if USE_NUMBA:
        return numba.njit(cache=True)(func)
    return func


def backend():
    return "numba" if USE_NUMBA else "numpy"
