"""numba shim.

Set ``FFVAR_DISABLE_JIT=1`` to run the pure-numpy code paths instead of the
compiled kernels (also used automatically when numba cannot be imported).
"""
import os

JIT_ENABLED = os.environ.get("FFVAR_DISABLE_JIT", "0").lower() not in ("1", "true", "yes")

if JIT_ENABLED:
    try:
        from numba import njit
    except ImportError:  # pragma: no cover
        JIT_ENABLED = False

if not JIT_ENABLED:

    def njit(func=None, **kwargs):
        if func is not None:
            return func

        def wrapper(f):
            return f

        return wrapper
