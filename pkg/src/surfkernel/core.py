"""Backend selection for the word kernels.

The compiled ``_ccore`` extension is used when it was built; otherwise the
pure-Python ``_pycore`` is used.  Setting ``SURFKERNEL_PURE_PYTHON=1`` in the
environment forces the fallback.  Callers go through this module's
attributes (``core.free_reduce(...)``) so :func:`set_backend` takes effect
everywhere.
"""

import os

from . import _pycore

try:
    from . import _ccore
except ImportError:  # extension not built
    _ccore = None

__all__ = [
    "BACKEND",
    "available_backends",
    "set_backend",
    "free_reduce",
    "cyclic_reduce",
    "inverse",
    "substitute",
    "evaluate",
    "rewrite",
    "abelianize",
    "singletons",
    "group_tables",
]

_NAMES = ("free_reduce", "cyclic_reduce", "inverse", "substitute", "evaluate",
          "rewrite", "abelianize", "singletons")


def available_backends():
    return ("cython", "python") if _ccore is not None else ("python",)


def set_backend(name):
    """Switch every kernel to ``"cython"`` or ``"python"``."""
    global BACKEND
    if name == "cython":
        if _ccore is None:
            raise RuntimeError("the compiled extension surfkernel._ccore is not built")
        mod = _ccore
    elif name == "python":
        mod = _pycore
    else:
        raise ValueError(f"unknown backend {name!r}")
    g = globals()
    for fn in _NAMES:
        g[fn] = getattr(mod, fn)
    BACKEND = name


def group_tables(grp):
    """Return ``(table, inverse)`` of a FiniteGroup in the active backend's format."""
    if BACKEND == "cython":
        return grp.table, grp.inverse_array
    return grp.rows, grp.inverse


BACKEND = "python"
set_backend("cython" if _ccore is not None and not os.environ.get("SURFKERNEL_PURE_PYTHON")
            else "python")
