"""Kernel selection: compiled extension when importable, else pure Python.

Set ``HARMDENOM_PURE=1`` to force the fallback.
"""

import os

from . import _pykernels

BACKEND = "python"
kernels = _pykernels

if os.environ.get("HARMDENOM_PURE", "") not in ("1", "true", "yes"):
    try:
        from . import _kernels as kernels  # type: ignore[no-redef]

        BACKEND = "cython"
    except ImportError:
        pass
