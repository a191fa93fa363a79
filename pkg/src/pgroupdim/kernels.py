"""Kernel backend selection.

Imports the compiled kernels when the extension was built, otherwise
the pure-Python implementation.  Setting the environment variable
PGROUPDIM_PURE=1 forces the fallback (useful for the benchmark and for
debugging).  Both backends expose exactly:

    BACKEND, make_ctx, identity, mul, inv, power, conj_x_pow,
    rref, reduce_vec
"""

from __future__ import annotations

import os

if os.environ.get("PGROUPDIM_PURE"):
    from . import _pycore as _impl
else:
    try:
        from . import _core as _impl  # type: ignore[attr-defined]
    except ImportError:
        from . import _pycore as _impl

BACKEND: str = _impl.BACKEND

make_ctx = _impl.make_ctx
identity = _impl.identity
mul = _impl.mul
inv = _impl.inv
power = _impl.power
conj_x_pow = _impl.conj_x_pow
rref = _impl.rref
reduce_vec = _impl.reduce_vec
