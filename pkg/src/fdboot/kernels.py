"""Backend selection for the hot loops.

The compiled extension is used when it was built; otherwise, or when
``FDBOOT_PURE_PYTHON=1`` is set, the numpy fallback is loaded.  Both
backends expose the same functions and return bitwise-identical results.
"""
import os

from . import _fallback

if os.environ.get("FDBOOT_PURE_PYTHON", "").strip() not in ("", "0"):
    _impl = _fallback
else:
    try:
        from . import _kernels as _impl
    except ImportError:  # extension not built
        _impl = _fallback

BACKEND = _impl.BACKEND

le_counts = _impl.le_counts
fm_depth_scores = _impl.fm_depth_scores
pairwise_l2 = _impl.pairwise_l2
pairwise_linf = _impl.pairwise_linf
l2_to_reference = _impl.l2_to_reference
linf_to_reference = _impl.linf_to_reference

__all__ = [
    "BACKEND",
    "le_counts",
    "fm_depth_scores",
    "pairwise_l2",
    "pairwise_linf",
    "l2_to_reference",
    "linf_to_reference",
]
