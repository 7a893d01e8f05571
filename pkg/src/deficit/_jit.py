"""Numba switch.

Kernels are decorated with :func:`njit` from this module.  When numba is
importable and ``DEFICIT_DISABLE_NUMBA`` is unset (or ``0``) they are
compiled; otherwise the very same functions run as plain Python on numpy
arrays.  The flag is read once at import time.
"""
import os

try:
    import numba
except ImportError:  # pragma: no cover - numba is a declared dependency
    numba = None

DISABLED = os.environ.get("DEFICIT_DISABLE_NUMBA", "0").strip() not in ("", "0")
USE_NUMBA = numba is not None and not DISABLED


def njit(*args, **kwargs):
    if USE_NUMBA:
        kwargs.setdefault("cache", True)
        return numba.njit(*args, **kwargs)
    if len(args) == 1 and callable(args[0]) and not kwargs:
        return args[0]

    def wrap(fn):
        return fn

    return wrap


def backend():
    return "numba" if USE_NUMBA else "python"
