"""Numerical kernels with a compiled fast path.

The Cython extension ``terraml.kernels._ckernels`` is preferred when it was
built; otherwise the vectorized numpy fallback is used. Both backends share
one signature set, so the rest of the package imports the functions from here
and never cares which one is active. Set ``TERRAML_KERNELS=python`` or
``TERRAML_KERNELS=compiled`` to force a backend (the latter raises if the
extension is missing).
"""

from __future__ import annotations

import os

from . import _npkernels

_forced = os.environ.get("TERRAML_KERNELS", "").strip().lower()

if _forced == "python":
    _impl = _npkernels
    BACKEND = "python"
else:
    try:
        from . import _ckernels as _impl  # type: ignore[attr-defined]

        BACKEND = "compiled"
    except ImportError:
        if _forced == "compiled":
            raise ImportError(
                "TERRAML_KERNELS=compiled but the _ckernels extension is not built; "
                "install with `pip install -e . --no-build-isolation`"
            )
        _impl = _npkernels
        BACKEND = "python"

conv2d_forward = _impl.conv2d_forward
conv2d_backward = _impl.conv2d_backward
maxpool2_forward = _impl.maxpool2_forward
maxpool2_backward = _impl.maxpool2_backward
pairwise_sqdist_argmin = _impl.pairwise_sqdist_argmin
resize_bilinear = _impl.resize_bilinear

__all__ = [
    "BACKEND",
    "conv2d_forward",
    "conv2d_backward",
    "maxpool2_forward",
    "maxpool2_backward",
    "pairwise_sqdist_argmin",
    "resize_bilinear",
]
