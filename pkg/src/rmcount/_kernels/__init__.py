"""Kernel backend selection.

The compiled extension is used when it imports; otherwise, or when
``RMCOUNT_PURE_PYTHON=1`` is set, the pure-Python module stands in.
"""

import os

from rmcount._kernels import _pykernel

KIND_RLL = 0
KIND_WEIGHT = 1

if os.environ.get("RMCOUNT_PURE_PYTHON", "") not in ("", "0"):
    kernel = _pykernel
else:
    try:
        from rmcount._kernels import _ckernel as kernel
    except ImportError:  # extension not built
        kernel = _pykernel

BACKEND = kernel.BACKEND
pykernel = _pykernel

__all__ = ["BACKEND", "KIND_RLL", "KIND_WEIGHT", "kernel", "pykernel"]
