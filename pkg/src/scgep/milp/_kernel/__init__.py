"""Kernel selection: compiled extension when importable, numpy fallback.

Set ``SCGEP_PURE_PY=1`` to force the numpy implementation.
"""

import os

from .pivots_py import (  # noqa: F401
    ST_OPTIMAL,
    ST_INFEASIBLE,
    ST_UNBOUNDED,
    ST_ITERLIMIT,
)

if os.environ.get("SCGEP_PURE_PY") == "1":
    from . import pivots_py as impl
    COMPILED = False
else:
    try:
        from . import _speedups as impl  # type: ignore[no-redef]
        COMPILED = True
    except ImportError:
        from . import pivots_py as impl  # type: ignore[no-redef]
        COMPILED = False

bounded_simplex = impl.bounded_simplex


def kernel_name() -> str:
    return "compiled" if COMPILED else "python"
