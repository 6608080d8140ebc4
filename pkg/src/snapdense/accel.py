"""Kernel acceleration switch.

Hot numeric kernels live in ``_kernels.py`` as plain functions over numpy
arrays.  By default they are compiled with numba's ``@njit``; setting the
environment variable ``SNAPDENSE_NUMBA=0`` selects the interpreted
numpy/python fallback path instead (same functions, no compilation).
``SNAPDENSE_NUMBA=1`` demands numba and raises if it is missing.
"""

import os

_ENV_VAR = "SNAPDENSE_NUMBA"


def _resolve() -> bool:
    flag = os.environ.get(_ENV_VAR, "auto").strip().lower()
    if flag in ("0", "off", "false", "no"):
        return False
    try:
        import numba  # noqa: F401
    except ImportError:
        if flag in ("1", "on", "true", "yes"):
            raise RuntimeError(
                f"{_ENV_VAR}={flag} requires numba, which is not installed"
            )
        return False
    return True


NUMBA_ENABLED = _resolve()


def using_numba() -> bool:
    """True when kernels run as numba-compiled code."""
    return NUMBA_ENABLED


def maybe_jit(fn):
    """Apply ``numba.njit(cache=True)`` when enabled, else return fn as is."""
    if NUMBA_ENABLED:
        from numba import njit

        return njit(cache=True)(fn)
    return fn
