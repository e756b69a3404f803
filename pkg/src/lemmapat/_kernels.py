"""Kernel selection: the compiled extension when importable, else Python.

Set ``LEMMAPAT_PURE_PYTHON=1`` to force the pure-Python kernels.
"""

import os

from . import _kernels_py

if os.environ.get("LEMMAPAT_PURE_PYTHON", "") not in ("", "0"):
    _impl = _kernels_py
else:
    try:
        from . import _kernels_c as _impl
    except ImportError:
        _impl = _kernels_py

edit_script = _impl.edit_script
best_anchor = _impl.best_anchor
BACKEND = "cython" if _impl is not _kernels_py else "python"
