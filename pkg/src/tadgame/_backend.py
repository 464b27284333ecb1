"""Pick the compiled kernels when available, else the pure-Python ones.

Set ``TADGAME_BACKEND=python`` to force the fallback.
"""

import os

from . import _kernels_py

kernels = _kernels_py
if os.environ.get("TADGAME_BACKEND", "").lower() != "python":
    try:
        from . import _kernels as kernels  # type: ignore[no-redef]
    except ImportError:
        kernels = _kernels_py

BACKEND = kernels.BACKEND
