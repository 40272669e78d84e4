"""Numeric kernels with a compiled fast path and a pure-Python fallback.

The 1-D k-means dynamic program is the hot inner loop of the alternating
stratification solver (it runs once per restart per outer iteration and is
O(K * N^2)), so it ships as a Cython extension.  A numpy twin with the same
operation order is selected automatically when the extension is missing.

Set ``TAXOSTRAT_KERNELS`` to ``compiled`` or ``python`` to force a backend
(``auto``/unset picks compiled when available); forcing ``compiled`` without
the extension installed raises ImportError.
"""

from __future__ import annotations

import os
from typing import Callable, Dict

from . import _pykmeans

__all__ = ["BACKEND", "dp_kmeans_sorted", "backend_impls"]


def backend_impls() -> Dict[str, Callable]:
    """Map of available backend name -> ``dp_kmeans_sorted`` implementation."""
    impls: Dict[str, Callable] = {"python": _pykmeans.dp_kmeans_sorted}
    try:
        from . import _ckmeans
    except ImportError:
        pass
    else:
        impls["compiled"] = _ckmeans.dp_kmeans_sorted
    return impls


_requested = os.environ.get("TAXOSTRAT_KERNELS", "auto").strip().lower() or "auto"
if _requested not in ("auto", "compiled", "python"):
    raise ImportError(
        f"TAXOSTRAT_KERNELS must be 'auto', 'compiled' or 'python', got {_requested!r}"
    )

_impls = backend_impls()
if _requested == "python":
    BACKEND = "python"
elif _requested == "compiled":
    if "compiled" not in _impls:
        raise ImportError("TAXOSTRAT_KERNELS=compiled but the extension is not built")
    BACKEND = "compiled"
else:
    BACKEND = "compiled" if "compiled" in _impls else "python"

dp_kmeans_sorted = _impls[BACKEND]
