"""Backend selection for the hot integrand kernels.

The compiled extension is used when it has been built; otherwise the numpy
implementation is loaded.  Setting ``DD_METROLOGY_PURE=1`` forces numpy.
"""
import os

from . import _kernels_py

BACKEND = "python"
_impl = _kernels_py

if os.environ.get("DD_METROLOGY_PURE", "") not in ("1", "true", "yes"):
    try:
        from . import _kernels_ext as _impl  # noqa: F811
        BACKEND = "cython"
    except ImportError:  # extension not built
        _impl = _kernels_py

filter_raw = _impl.filter_raw
kernel_raw = _impl.kernel_raw

__all__ = ["BACKEND", "filter_raw", "kernel_raw"]
