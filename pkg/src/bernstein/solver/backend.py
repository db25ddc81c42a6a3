"""Pick the compiled kernels when they were built, the numpy ones otherwise.

Set ``BERNSTEIN_PURE_PYTHON=1`` to force the fallback.
"""

import os

from . import _kernels_py

__all__ = ["BACKEND", "COMPILED_AVAILABLE", "fd_residual", "assemble_banded", "get_kernels"]

try:
    from . import _kernels as _compiled
except ImportError:
    _compiled = None

COMPILED_AVAILABLE = _compiled is not None
_force_python = os.environ.get("BERNSTEIN_PURE_PYTHON", "").lower() in ("1", "true", "yes")

_active = _compiled if (_compiled is not None and not _force_python) else _kernels_py
BACKEND = "compiled" if _active is _compiled else "python"

fd_residual = _active.fd_residual
assemble_banded = _active.assemble_banded


def get_kernels(name=None):
    """Kernel module for ``name`` ('compiled' or 'python'); the active one by default."""
    if name is None:
        return _active
    if name == "python":
        return _kernels_py
    if name == "compiled":
        if _compiled is None:
            raise ImportError("compiled kernels are not available in this build")
        return _compiled
    raise ValueError(f"unknown backend {name!r}")
