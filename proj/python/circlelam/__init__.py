"""Exact circle laminations of critical portrait pairs.

The heavy lifting lives in the ``_core`` extension; this package re-exports
its surface and adds a small loader shim so the module can also be used
straight out of a CMake build tree (set ``CIRCLELAM_MODULE_DIR``).
"""

import os
import sys

try:
    from ._core import (  # type: ignore[attr-defined]
        BudgetExceeded,
        Session,
        mu,
        orbit,
        preimages,
        validate_document,
    )
except ImportError:  # pragma: no cover - build-tree fallback
    _module_dir = os.environ.get("CIRCLELAM_MODULE_DIR")
    if not _module_dir:
        raise
    sys.path.insert(0, _module_dir)
    from _core import (  # type: ignore[import-not-found]
        BudgetExceeded,
        Session,
        mu,
        orbit,
        preimages,
        validate_document,
    )

__all__ = [
    "BudgetExceeded",
    "Session",
    "mu",
    "orbit",
    "preimages",
    "validate_document",
]
