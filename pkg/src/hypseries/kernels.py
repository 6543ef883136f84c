"""Backend selection for the convolution kernels.

The compiled module is used when importable; ``HYPSERIES_PURE=1`` forces the
pure-Python fallback.
"""
import os

from . import _kernels_py

if os.environ.get("HYPSERIES_PURE", "") not in ("", "0"):
    _impl = _kernels_py
else:
    try:
        from . import _ckernels as _impl
    except ImportError:  # extension not built
        _impl = _kernels_py

BACKEND = _impl.BACKEND
conv_int = _impl.conv_int
conv_complex = _impl.conv_complex

__all__ = ["BACKEND", "conv_int", "conv_complex", "_kernels_py"]
