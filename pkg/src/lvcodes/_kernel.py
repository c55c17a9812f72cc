"""Backend selection for the elimination kernel.

The compiled extension is used when it imports and the modulus fits its range;
set ``LVCODES_PURE_PYTHON=1`` to force the fallback.
"""

import os

from . import _pykernel

try:
    if os.environ.get("LVCODES_PURE_PYTHON"):
        raise ImportError("pure-Python backend forced")
    from . import _ckernel
except ImportError:
    _ckernel = None

BACKEND = "cython" if _ckernel is not None else "python"


def _impl(q, backend):
    backend = backend or BACKEND
    if backend not in ("cython", "python"):
        raise ValueError(f"unknown backend {backend!r}")
    if backend == "cython" and _ckernel is not None and q < _ckernel.MAX_MODULUS:
        return _ckernel
    return _pykernel


def rref(rows, q, backend=None):
    """Gauss-Jordan form of ``rows`` mod q: ``(reduced_rows, pivot_columns)``."""
    return _impl(q, backend).rref(rows, q)


def interpolation_rows(alphas, windows, n_a0, D, q, backend=None):
    return _impl(q, backend).interpolation_rows(alphas, windows, n_a0, D, q)


def poly_eval_many(coeffs, xs, q, backend=None):
    return _impl(q, backend).poly_eval_many(coeffs, xs, q)
