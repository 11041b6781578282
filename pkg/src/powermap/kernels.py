"""Backend selection for the hot loops.

The compiled extension is used when it was built; otherwise, or when
``POWERMAP_PURE_PYTHON=1`` is set, the pure-Python versions are used.
"""

from __future__ import annotations

import os

from . import _pykernels

if os.environ.get("POWERMAP_PURE_PYTHON", "") not in ("", "0"):
    _impl = _pykernels
    BACKEND = "python"
else:
    try:
        from . import _ckernels as _impl  # type: ignore[attr-defined]

        BACKEND = "cython"
    except ImportError:
        _impl = _pykernels
        BACKEND = "python"

decompose_succ = _impl.decompose_succ
cyclic_counts = _impl.cyclic_counts


def backends() -> dict[str, object]:
    """All importable backends, keyed by name."""
    found: dict[str, object] = {"python": _pykernels}
    try:
        from . import _ckernels

        found["cython"] = _ckernels
    except ImportError:
        pass
    return found
