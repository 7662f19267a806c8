"""numba switch.

Setting ``BIPHOTON_DISABLE_NUMBA=1`` (or running without numba installed)
routes every kernel through its pure-numpy twin.
"""
import os

_DISABLED = os.environ.get("BIPHOTON_DISABLE_NUMBA", "0").strip().lower() in {"1", "true", "yes", "on"}

try:
    if _DISABLED:
        raise ImportError
    # the bundled TBB is too old for numba; OpenMP or workqueue are fine
    os.environ.setdefault("NUMBA_THREADING_LAYER", "omp")
    import numba
    from numba import njit, prange

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - exercised via env flag
    numba = None
    HAVE_NUMBA = False

    def njit(*args, **kwargs):
        if len(args) == 1 and callable(args[0]) and not kwargs:
            return args[0]
        return lambda fn: fn

    prange = range


def numba_enabled():
    return HAVE_NUMBA
