"""Kernel backend selection.

The compiled extension is preferred when it imports cleanly; setting
``RRCR_PURE_PYTHON=1`` forces the pure numpy/scipy backend.
"""

import os

if os.environ.get("RRCR_PURE_PYTHON", "").strip() not in ("", "0"):
    from . import _kernels_py as kernels
else:
    try:
        from . import _kernels_cy as kernels  # type: ignore[attr-defined]
    except ImportError:
        from . import _kernels_py as kernels


def backend_name() -> str:
    """Name of the active kernel backend: ``"cython"`` or ``"python"``."""
    return kernels.backend_name()
