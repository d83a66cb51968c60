"""Hot loops for hypercube analysis, compiled when the extension is available.

Set ``FOLSPACE_PURE_PYTHON=1`` to force the numpy fallback.
"""

from __future__ import annotations

import os

if os.environ.get("FOLSPACE_PURE_PYTHON"):
    from ._kernels_py import influence_counts, label_sum

    BACKEND = "python"
else:
    try:
        from ._kernels import influence_counts, label_sum  # type: ignore[import-not-found]

        BACKEND = "compiled"
    except ImportError:
        from ._kernels_py import influence_counts, label_sum

        BACKEND = "python"

__all__ = ["BACKEND", "influence_counts", "label_sum"]
