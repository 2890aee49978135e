"""Backend selection for the fixpoint kernels.

The compiled extension is used when it was built; setting
``LAMBKIT_PURE_PYTHON=1`` forces the pure-Python implementation.
"""
import os

from . import _pykernels

if os.environ.get("LAMBKIT_PURE_PYTHON"):
    _impl = _pykernels
else:
    try:
        from . import _ckernels as _impl
    except ImportError:  # extension not built
        _impl = _pykernels

BACKEND = "cython" if _impl is not _pykernels else "python"

pre = _impl.pre
until = _impl.until
release = _impl.release


def backends():
    """Map backend name to kernel module for every importable backend."""
    found = {"python": _pykernels}
    try:
        from . import _ckernels
        found["cython"] = _ckernels
    except ImportError:
        pass
    return found
