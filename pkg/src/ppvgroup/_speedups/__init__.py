"""Kernel backend selection.

The compiled extension ``_ckernels`` is used when it was built and imports
cleanly; otherwise the pure-Python kernels are used.  Setting the environment
variable ``PPVGROUP_PURE=1`` forces the pure-Python backend.
"""

import os

from . import _pykernels

pure = _pykernels

native = None
if os.environ.get("PPVGROUP_PURE", "") not in ("1", "true", "yes"):
    try:
        from . import _ckernels as native  # type: ignore[no-redef]
    except ImportError:
        native = None

kernels = native if native is not None else pure
BACKEND = kernels.BACKEND

__all__ = ["kernels", "pure", "native", "BACKEND"]
