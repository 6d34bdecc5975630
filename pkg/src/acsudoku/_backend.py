"""Pick the propagation kernels at import time.

The compiled extension is used when it imports; set ``ACSUDOKU_PURE=1`` to
force the pure-Python kernels.
"""
import os

from acsudoku import _pykernels

try:
    from acsudoku import _kernels as _compiled
except ImportError:  # extension not built
    _compiled = None

BACKENDS = ("pure", "compiled")

if _compiled is not None and not os.environ.get("ACSUDOKU_PURE"):
    DEFAULT = "compiled"
else:
    DEFAULT = "pure"


def available() -> list[str]:
    return ["pure"] + (["compiled"] if _compiled is not None else [])


def kernels(name: str | None = None):
    """Return the kernel module for ``name`` (``None``/``"auto"`` selects the default)."""
    if name in (None, "auto"):
        name = DEFAULT
    if name == "pure":
        return _pykernels
    if name == "compiled":
        if _compiled is None:
            raise RuntimeError("compiled kernels are not available; reinstall with Cython and a C compiler")
        return _compiled
    raise ValueError(f"unknown backend {name!r}; expected one of {BACKENDS}")
