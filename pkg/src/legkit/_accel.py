"""Selection between numba-compiled kernels and the pure-numpy fallback.

Set ``LEGKIT_DISABLE_NUMBA=1`` to force the numpy path.  The flag is read
once, at import time.
"""
import os

_FALSY = {"", "0", "false", "no", "off"}


def _env_disabled():
    return os.environ.get("LEGKIT_DISABLE_NUMBA", "0").strip().lower() not in _FALSY


try:
    import numba

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - numba is a declared dependency
    numba = None
    HAVE_NUMBA = False

USE_NUMBA = HAVE_NUMBA and not _env_disabled()


def njit(func):
    """Compile ``func`` in nopython mode when numba is available, else return it unchanged."""
    if not HAVE_NUMBA:
        return func
    return numba.njit(cache=True, nogil=True)(func)
