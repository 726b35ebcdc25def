"""Numba switch.

Kernels in :mod:`holoq._kernels` come in two flavours, a numba ``@njit``
loop version and a vectorised numpy version.  The numba path is used when
numba imports and ``HOLOQ_DISABLE_NUMBA`` is unset (or ``0``).
"""
import os

try:
    import numba
except ImportError:  # pragma: no cover
    numba = None

HAS_NUMBA = numba is not None
USE_NUMBA = HAS_NUMBA and os.environ.get("HOLOQ_DISABLE_NUMBA", "0") in ("", "0")


def njit(fn):
    """Compile ``fn`` with numba if available, else return it untouched."""
    if not HAS_NUMBA:
        return fn
    return numba.njit(cache=True)(fn)
