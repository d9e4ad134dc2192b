"""Kernel selection: the compiled extension when importable, else pure Python.

Set ``FOLIATION_PURE=1`` to force the fallback.
"""

import os

from . import _pykernels

BACKEND = "python"
_impl = _pykernels
if not os.environ.get("FOLIATION_PURE"):
    try:
        from . import _ckernels as _impl  # type: ignore[no-redef]

        BACKEND = "cython"
    except ImportError:
        _impl = _pykernels

sparse_mul = _impl.sparse_mul
sparse_axpy = _impl.sparse_axpy
dense_mul = _impl.dense_mul
dense_divmod = _impl.dense_divmod
