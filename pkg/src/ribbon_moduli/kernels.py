"""Kernel selection: compiled extension when built, pure Python otherwise.

Set ``RIBBON_MODULI_PURE=1`` to force the Python kernels.
"""

from __future__ import annotations

import os

from . import _kernels_py

BACKEND = "python"
traverse = _kernels_py.traverse
canonical = _kernels_py.canonical

if os.environ.get("RIBBON_MODULI_PURE", "") not in ("1", "true", "yes"):
    try:
        from . import _kernels as _compiled
    except ImportError:
        pass
    else:
        traverse = _compiled.traverse
        canonical = _compiled.canonical
        BACKEND = "cython"
