"""Shortest-path kernel with a compiled core and a pure-Python fallback.

The compiled extension (``_fastgraph``, built from Cython at install time) is
preferred; if it is missing the pure-Python implementation takes over with
identical observable behavior.  Set ``MINPATH_KERNEL=py`` or ``=c`` to force a
backend (``c`` raises if the extension is unavailable);
``benchmarks/kernel_bench.py`` compares the two.
"""
from __future__ import annotations

import os

_requested = os.environ.get("MINPATH_KERNEL", "").strip().lower()

if _requested in ("py", "python"):
    from ._pyfallback import Graph

    BACKEND = "python"
elif _requested in ("c", "compiled", "cython"):
    from ._fastgraph import Graph  # noqa: F401  (raises ImportError if not built)

    BACKEND = "compiled"
else:
    try:
        from ._fastgraph import Graph  # type: ignore[no-redef]

        BACKEND = "compiled"
    except ImportError:
        from ._pyfallback import Graph  # type: ignore[no-redef]

        BACKEND = "python"


def backend_name() -> str:
    return BACKEND


def path_from_predecessors(pred, source: int, target: int) -> list[int] | None:
    """Reconstruct a node path from a predecessor array, or None if absent."""
    if target == source:
        return [source]
    if pred[target] < 0:
        return None
    path = [target]
    cur = target
    while cur != source:
        cur = int(pred[cur])
        path.append(cur)
    path.reverse()
    return path
