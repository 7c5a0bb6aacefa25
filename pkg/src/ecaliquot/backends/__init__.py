"""Kernel backend selection.

Prefers the compiled Cython extension; falls back to the numpy
implementation when the extension is missing or when the environment
variable ECALIQUOT_BACKEND=python forces the fallback.
"""

from __future__ import annotations

import os

from . import _pykernels

if os.environ.get("ECALIQUOT_BACKEND", "").lower() == "python":
    _impl = _pykernels
    BACKEND = "python"
else:
    try:
        from . import _ckernels as _impl  # type: ignore[no-redef]

        BACKEND = "c"
    except ImportError:
        _impl = _pykernels
        BACKEND = "python"

legendre_table = _impl.legendre_table
trace_batch = _impl.trace_batch
# the matrix-product route in the fallback beats the compiled loop here
# (see benchmarks/bench_kernels.py), so it is used unconditionally
order_counts = _pykernels.order_counts
kronecker_table = _impl.kronecker_table

__all__ = [
    "BACKEND",
    "legendre_table",
    "trace_batch",
    "order_counts",
    "kronecker_table",
]
