"""Numeric kernel backend.

Two interchangeable implementations of the same eight kernels: a compiled
extension and a NumPy fallback.  Selection happens once at import time.

Set TOOLTALK_BACKEND=python to force the fallback, TOOLTALK_BACKEND=compiled
to require the extension (ImportError if it is missing).  By default the
extension is used when available.

Results agree across backends to ~1e-10 (summation order differs); within a
backend they are bitwise reproducible.
"""

import os

_choice = os.environ.get("TOOLTALK_BACKEND", "").strip().lower()

if _choice in ("python", "py"):
    from . import kernels_py as _impl
    BACKEND = "python"
elif _choice in ("compiled", "c"):
    from . import _kernels as _impl
    BACKEND = "compiled"
elif _choice == "":
    try:
        from . import _kernels as _impl
        BACKEND = "compiled"
    except ImportError:
        from . import kernels_py as _impl
        BACKEND = "python"
else:
    raise ValueError(
        f"unknown TOOLTALK_BACKEND={_choice!r}; use 'python' or 'compiled'"
    )

matvec_add = _impl.matvec_add
matvec_add_bwd = _impl.matvec_add_bwd
tanh_fwd = _impl.tanh_fwd
tanh_bwd = _impl.tanh_bwd
rnn_fwd = _impl.rnn_fwd
rnn_bwd = _impl.rnn_bwd
softmax_fwd = _impl.softmax_fwd
softmax_bwd = _impl.softmax_bwd

__all__ = [
    "BACKEND",
    "matvec_add", "matvec_add_bwd",
    "tanh_fwd", "tanh_bwd",
    "rnn_fwd", "rnn_bwd",
    "softmax_fwd", "softmax_bwd",
]
