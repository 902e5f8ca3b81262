"""Kernel backend selection.

``SBOX_FORGE_BACKEND`` picks the kernels at import time: ``numba`` (default)
or ``numpy``.  If numba cannot be imported the numpy kernels are used with a
warning.  ``SBOX_FORGE_THREADS`` caps numba's thread pool.
"""

import importlib
import os
import warnings

BACKENDS = ("numba", "numpy")


def load(name):
    """Import and return the kernel module for backend ``name``."""
    if name not in BACKENDS:
        raise ValueError(f"unknown backend {name!r}; expected one of {BACKENDS}")
    return importlib.import_module(f"sbox_forge._kernels_{name}")


def _select():
    requested = os.environ.get("SBOX_FORGE_BACKEND", "numba").strip().lower() or "numba"
    if requested not in BACKENDS:
        raise ValueError(f"SBOX_FORGE_BACKEND={requested!r}; expected one of {BACKENDS}")
    if requested == "numba":
        try:
            mod = load("numba")
        except ImportError as exc:  # pragma: no cover - numba is a declared dependency
            warnings.warn(f"numba unavailable ({exc}); using numpy kernels", RuntimeWarning)
            return "numpy", load("numpy")
        _cap_threads()
        return "numba", mod
    return "numpy", load("numpy")


def _cap_threads():
    raw = os.environ.get("SBOX_FORGE_THREADS")
    if not raw:
        return
    import numba

    try:
        n = int(raw)
    except ValueError:
        raise ValueError(f"SBOX_FORGE_THREADS must be an integer, got {raw!r}") from None
    if n < 1:
        raise ValueError("SBOX_FORGE_THREADS must be >= 1")
    numba.set_num_threads(min(n, numba.config.NUMBA_NUM_THREADS))


NAME, kernels = _select()
