"""Backend selection for the traversal kernels.

The compiled extension is used when it imports; otherwise the pure-Python
module is used. Setting ``HEATGRAPH_PURE_PYTHON=1`` forces the fallback.
"""
import os

from . import _kernels_py

BACKEND = "python"
_impl = _kernels_py

if os.environ.get("HEATGRAPH_PURE_PYTHON", "") not in ("1", "true", "yes"):
    try:
        from . import _kernels as _compiled
    except ImportError:
        pass
    else:
        _impl = _compiled
        BACKEND = "cython"

bfs_distances = _impl.bfs_distances
dijkstra = _impl.dijkstra
component_labels = _impl.component_labels

__all__ = ["BACKEND", "bfs_distances", "dijkstra", "component_labels"]
