"""Routing kernel selection: compiled extension if available, numpy otherwise.

Set CADDY_PURE_PYTHON=1 to force the numpy fallback (used by the benchmark
and to exercise both paths in tests).
"""

import os

from . import routing_py

if os.environ.get("CADDY_PURE_PYTHON") == "1":
    IMPLEMENTATION = "python"
    nearest_centroids = routing_py.nearest_centroids
else:
    try:
        from . import _routing

        IMPLEMENTATION = "compiled"
        nearest_centroids = _routing.nearest_centroids
    except ImportError:
        IMPLEMENTATION = "python"
        nearest_centroids = routing_py.nearest_centroids
