"""Backend selection for the compiled kernels.

Numba is used when it imports cleanly and ``SPARSEKL_DISABLE_NUMBA`` is unset
(or set to ``0``/``false``).  Otherwise every kernel runs its vectorized numpy
twin.  The choice is made once, at import time.
"""
import os


def _noop_jit(*args, **kwargs):
    if len(args) == 1 and callable(args[0]) and not kwargs:
        return args[0]
    return lambda f: f


def _flag_disabled() -> bool:
    value = os.environ.get("SPARSEKL_DISABLE_NUMBA", "").strip().lower()
    return value not in ("", "0", "false", "no")


try:
    import numba

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - depends on the environment
    numba = None
    HAVE_NUMBA = False

USE_NUMBA = HAVE_NUMBA and not _flag_disabled()

if HAVE_NUMBA:
    njit = numba.njit
else:  # pragma: no cover
    njit = _noop_jit

BACKEND = "numba" if USE_NUMBA else "numpy"
