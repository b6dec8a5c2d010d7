"""Kernel backend selection.

The compiled extension ``_kernels`` is used when it imports; otherwise, or
when ``LAGRANGE_WEYL_PURE=1`` is set, the numpy versions in ``_kernels_py``
are used.  Both expose the same functions on int64/uint8 arrays.
"""

import os

from . import _kernels_py

BACKEND = "python"
_impl = _kernels_py

if os.environ.get("LAGRANGE_WEYL_PURE", "") not in ("1", "true", "yes"):
    try:
        from . import _kernels as _compiled  # type: ignore[attr-defined]
    except ImportError:
        pass
    else:
        _impl = _compiled
        BACKEND = "cython"

closure_mask = _impl.closure_mask
cocycle_defects = _impl.cocycle_defects
annihilator_mask = _impl.annihilator_mask
projective_defects = _impl.projective_defects


def implementations():
    """Map backend name -> module, for benchmarks and cross-checks."""
    out = {"python": _kernels_py}
    try:
        from . import _kernels as _compiled  # type: ignore[attr-defined]
    except ImportError:
        return out
    out["cython"] = _compiled
    return out
