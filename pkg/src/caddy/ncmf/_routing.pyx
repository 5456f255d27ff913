# cython: boundscheck=False, wraparound=False, cdivision=True, language_level=3
"""Compiled nearest-centroid routing kernel.

Same contract as routing_py.nearest_centroids: squared Euclidean argmin
per point, ties toward the lowest centroid index.
"""

import numpy as np

from libc.math cimport INFINITY


def nearest_centroids(points, centroids):
    points = np.ascontiguousarray(points, dtype=np.float64)
    centroids = np.ascontiguousarray(centroids, dtype=np.float64)
    cdef double[:, ::1] p = points
    cdef double[:, ::1] c = centroids
    cdef Py_ssize_t n = p.shape[0]
    cdef Py_ssize_t nc = c.shape[0]
    cdef Py_ssize_t nd = p.shape[1]
    out = np.empty(n, dtype=np.intp)
    cdef Py_ssize_t[::1] o = out
    cdef Py_ssize_t i, j, k, best
    cdef double dist, diff, best_dist
    with nogil:
        for i in range(n):
            best = 0
            best_dist = INFINITY
            for j in range(nc):
                dist = 0.0
                for k in range(nd):
                    diff = p[i, k] - c[j, k]
                    dist += diff * diff
                    if dist > best_dist:
                        break
                if dist < best_dist:
                    best_dist = dist
                    best = j
            o[i] = best
    return out
