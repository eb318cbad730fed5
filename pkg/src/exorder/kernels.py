"""Backend dispatch for the estimator kernels.

The compiled Cython module is preferred; the pure-NumPy fallback is used
when the extension is unavailable or ``EXORDER_PURE_PYTHON`` is set in the
environment.  ``BACKEND`` names the active implementation.
"""

import os

if os.environ.get("EXORDER_PURE_PYTHON"):
    from . import _kernels_py as _impl
    BACKEND = "python"
else:
    try:
        from . import _kernels as _impl  # type: ignore[attr-defined]
        BACKEND = "compiled"
    except ImportError:
        from . import _kernels_py as _impl
        BACKEND = "python"

expectile_sorted = _impl.expectile_sorted
expectile_sorted_weighted = _impl.expectile_sorted_weighted
quantile_sorted = _impl.quantile_sorted
gini_sorted = _impl.gini_sorted

__all__ = ["BACKEND", "expectile_sorted", "expectile_sorted_weighted",
           "quantile_sorted", "gini_sorted"]
