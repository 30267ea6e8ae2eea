"""Kernel dispatch: the compiled extension when it was built, else pure Python.

Set ``TCARRANGE_PURE_PYTHON=1`` to force the fallback.  ``BACKEND`` names the
implementation in use.
"""
from __future__ import annotations

import os

from . import _pykernels as python

compiled = None
if not os.environ.get("TCARRANGE_PURE_PYTHON"):
    try:
        from . import _kernels as compiled  # type: ignore[no-redef]
    except ImportError:  # extension not built
        compiled = None

_active = compiled if compiled is not None else python
BACKEND = "compiled" if compiled is not None else "python"

flag_expansion = _active.flag_expansion
segment_incidence = _active.segment_incidence
frame_distances = _active.frame_distances
frame_steps = _active.frame_steps
