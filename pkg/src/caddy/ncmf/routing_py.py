"""Pure-numpy nearest-centroid routing kernel (fallback for the compiled one)."""

import numpy as np


def nearest_centroids(points: np.ndarray, centroids: np.ndarray) -> np.ndarray:
    """Index of the closest centroid for each point (squared Euclidean).

    Ties break toward the lowest centroid index. points is (n, d),
    centroids is (c, d); returns intp indices of shape (n,).
    """
    points = np.ascontiguousarray(points, dtype=np.float64)
    centroids = np.ascontiguousarray(centroids, dtype=np.float64)
    d2 = ((points[:, None, :] - centroids[None, :, :]) ** 2).sum(axis=2)
    return d2.argmin(axis=1).astype(np.intp)
