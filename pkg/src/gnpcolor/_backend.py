"""Kernel backend selection.

The hot inner loops (truncated cycle search, update replay) exist in two
flavors: numba-jitted and plain Python over numpy arrays.  Both are compiled
from the same source functions, so they produce bit-identical results.  The
environment variable ``GNPCOLOR_BACKEND`` picks the flavor:

* unset or ``auto`` -- use numba if it imports, else plain Python;
* ``numba``         -- require numba, raise if unavailable;
* ``numpy``         -- force the plain Python/numpy fallback.
"""

from __future__ import annotations

import functools
import os
import warnings

_ENV_VAR = "GNPCOLOR_BACKEND"


def _requested() -> str:
    value = os.environ.get(_ENV_VAR, "auto").strip().lower() or "auto"
    if value not in ("auto", "numba", "numpy"):
        raise RuntimeError(
            f"{_ENV_VAR} must be 'auto', 'numba' or 'numpy', got {value!r}"
        )
    return value


@functools.cache
def numba_available() -> bool:
    try:
        import numba  # noqa: F401
    except ImportError:
        return False
    return True


@functools.cache
def use_numba() -> bool:
    req = _requested()
    if req == "numpy":
        return False
    if req == "numba":
        if not numba_available():
            raise RuntimeError(f"{_ENV_VAR}=numba but numba is not importable")
        return True
    return numba_available()


def active_backend() -> str:
    return "numba" if use_numba() else "numpy"


def njit_kernel(fn):
    """Jit *fn* with numba."""
    import numba

    return numba.njit(cache=True, nogil=True)(fn)


def plain_kernel(fn):
    """Run *fn* as-is, silencing numpy's uint64 wraparound warnings.

    The kernel RNG relies on mod-2^64 arithmetic; numpy flags the (intended)
    scalar overflow with a RuntimeWarning, numba does not.
    """

    @functools.wraps(fn)
    def wrapper(*args, **kwargs):
        with warnings.catch_warnings():
            warnings.simplefilter("ignore", RuntimeWarning)
            return fn(*args, **kwargs)

    return wrapper
