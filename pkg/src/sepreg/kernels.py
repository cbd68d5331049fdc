"""Backend selection for the hot kernels.

The compiled extension is used when it was built; otherwise the pure-Python
twin is loaded. Setting ``SEPREG_PURE_PYTHON=1`` forces the fallback.
"""

import os

if os.environ.get("SEPREG_PURE_PYTHON"):
    from sepreg import _pykernels as _impl
else:
    try:
        from sepreg import _ckernels as _impl
    except ImportError:  # extension not built
        from sepreg import _pykernels as _impl

BACKEND = "cython" if _impl.__name__.endswith("_ckernels") else "python"

reach_masks = _impl.reach_masks
scc = _impl.scc
profile_extend = _impl.profile_extend

__all__ = ["BACKEND", "reach_masks", "scc", "profile_extend"]
