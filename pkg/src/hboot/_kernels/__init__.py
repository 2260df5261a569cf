"""Hot loops of the resampling engine.

Two interchangeable backends produce bit-identical output: numba-compiled
kernels (default) and a pure-numpy fallback.  Set ``HBOOT_NUMBA=0`` in the
environment to force the fallback; it is also used when numba cannot be
imported.  ``threads`` is honoured only by the numba backend.
"""

from __future__ import annotations

import os

from . import _numpy

MEAN = _numpy.MEAN
MEDIAN = _numpy.MEDIAN

_DISABLED = os.environ.get("HBOOT_NUMBA", "1").strip().lower() in {"0", "false", "no", "off"}

_accel = None
if not _DISABLED:
    try:
        from . import _numba as _accel
    except ImportError:  # pragma: no cover - numba is an optional accelerator
        _accel = None

BACKEND = "numba" if _accel is not None else "numpy"


def get(name: str | None = None):
    """Return the kernel module for ``name`` (``"numba"``/``"numpy"``), default active one."""
    name = name or BACKEND
    if name == "numpy":
        return _numpy
    if name == "numba":
        if _accel is None:
            from . import _numba as mod  # raises if numba is unusable
            return mod
        return _accel
    raise ValueError(f"unknown backend {name!r}")
