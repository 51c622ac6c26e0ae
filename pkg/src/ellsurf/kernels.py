"""Backend selection for the torsion search kernels.

The compiled extension is used when it imports cleanly; setting
``ELLSURF_PURE_PYTHON=1`` forces the pure-Python implementation.
"""
from __future__ import annotations

import os

from . import _kernels_py

BACKEND = "python"
_impl = _kernels_py

if os.environ.get("ELLSURF_PURE_PYTHON", "") not in ("1", "true", "yes"):
    try:
        from . import _kernels as _compiled  # type: ignore[attr-defined]
    except ImportError:
        pass
    else:
        _impl = _compiled
        BACKEND = "cython"

valid_elements = _impl.valid_elements
element_orders = _impl.element_orders
find_embedding = _impl.find_embedding

__all__ = ["BACKEND", "valid_elements", "element_orders", "find_embedding"]
