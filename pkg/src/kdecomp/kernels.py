"""Kernel backend selection.

The compiled ``_kernels`` extension is used when it imports; otherwise the
pure-Python ``_fallback`` module. Set ``KDECOMP_PURE_PYTHON=1`` to force the
fallback.
"""

import os

from . import _fallback

if os.environ.get("KDECOMP_PURE_PYTHON", "") not in ("", "0"):
    _impl = _fallback
    BACKEND = "python"
else:
    try:
        from . import _kernels as _impl
        BACKEND = "compiled"
    except ImportError:  # extension not built
        _impl = _fallback
        BACKEND = "python"

submask_max = _impl.submask_max
supermask_min = _impl.supermask_min
search_subtree = _impl.search_subtree


def backends():
    """Every importable backend, by name."""
    out = {"python": _fallback}
    try:
        from . import _kernels
        out["compiled"] = _kernels
    except ImportError:
        pass
    return out
