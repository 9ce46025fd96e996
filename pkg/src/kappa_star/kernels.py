"""Backend selection for the hot loops.

The compiled extension is used when it imports; setting
``KAPPA_STAR_PURE=1`` forces the numpy fallback. ``BACKEND`` records the
choice.
"""

from __future__ import annotations

import os

from . import _kernels_py

_impl = _kernels_py
BACKEND = "python"

if os.environ.get("KAPPA_STAR_PURE", "") not in ("1", "true", "yes"):
    try:
        from . import _kernels as _compiled  # type: ignore[attr-defined]
    except ImportError:  # extension not built
        _compiled = None
    if _compiled is not None:
        _impl = _compiled
        BACKEND = "cython"

dilate_rows = _impl.dilate_rows
twisted_conv = _impl.twisted_conv
twisted_phase_sum = _impl.twisted_phase_sum

__all__ = ["BACKEND", "dilate_rows", "twisted_conv", "twisted_phase_sum"]
