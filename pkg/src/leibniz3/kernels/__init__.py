"""Hot loops behind a backend switch.

The compiled extension works on int64 and is used when it imports and the
inputs are small enough to rule out overflow; otherwise the pure-Python
kernels (unbounded integers) run. Set ``LEIBNIZ3_PURE_PYTHON=1`` to force
the fallback.
"""

from __future__ import annotations

import os

import numpy as np

from . import _pykernels

_LIMIT = 2 ** 62

_compiled = None
if os.environ.get("LEIBNIZ3_PURE_PYTHON", "") not in ("1", "true", "yes"):
    try:
        from . import _ckernels as _compiled
    except ImportError:
        _compiled = None

BACKEND = _compiled.BACKEND if _compiled is not None else _pykernels.BACKEND

__all__ = ["BACKEND", "cocycle_operator", "grid_zero_points", "compiled_available"]


def compiled_available() -> bool:
    return _compiled is not None


def _max_abs(arr) -> int:
    return max((abs(int(x)) for x in np.asarray(arr, dtype=object).ravel()), default=0)


def cocycle_operator(f, variant: int, backend: str | None = None):
    """Integer operator of the cocycle residual, linear in the dual tensor.

    ``variant`` is 1, 2, 3, or 0 for the summed 3-Lie form.
    """
    n = np.asarray(f).shape[0]
    impl = _pick(backend, _max_abs(f) * (10 * n + 1) < _LIMIT)
    return impl.cocycle_operator(f if impl is _pykernels else np.asarray(f, dtype=np.int64), variant)


def grid_zero_points(Q, grid, backend: str | None = None) -> list:
    """Lexicographic index tuples into ``grid`` where every quadratic form in ``Q`` vanishes."""
    Q = np.asarray(Q, dtype=object)
    g = _max_abs(grid)
    safe = (sum(abs(int(x)) for x in Q.ravel()) + 1) * (g * g + 1) < _LIMIT
    impl = _pick(backend, safe)
    if impl is _pykernels:
        return impl.grid_zero_points(Q, grid)
    return impl.grid_zero_points(np.asarray(Q, dtype=np.int64), np.asarray(grid, dtype=np.int64))


def _pick(backend, safe: bool):
    if backend == "python":
        return _pykernels
    if backend == "cython":
        if _compiled is None:
            raise RuntimeError("compiled kernels are not built")
        if not safe:
            raise OverflowError("inputs too large for int64 kernels")
        return _compiled
    if backend is not None:
        raise ValueError(f"unknown backend {backend!r}")
    return _compiled if (_compiled is not None and safe) else _pykernels
