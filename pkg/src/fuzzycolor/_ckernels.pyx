# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled bulk kernels. Semantics match ``_kernels_py`` exactly."""

import numpy as np

from cython.parallel cimport prange
from libc.math cimport sqrt, INFINITY


def delta_matrix(centers, jnds, X):
    cdef const double[:, ::1] C = np.ascontiguousarray(centers, dtype=np.float64)
    cdef const double[::1] R = np.ascontiguousarray(jnds, dtype=np.float64)
    cdef const double[:, ::1] P = np.ascontiguousarray(X, dtype=np.float64)
    cdef Py_ssize_t c = C.shape[0], n = P.shape[0], i, j
    dist_arr = np.empty((c, n))
    d_arr = np.empty((c, n))
    cdef double[:, ::1] dist = dist_arr
    cdef double[:, ::1] d = d_arr
    cdef double dl, da, db
    with nogil:
        for i in range(c):
            for j in range(n):
                dl = P[j, 0] - C[i, 0]
                da = P[j, 1] - C[i, 1]
                db = P[j, 2] - C[i, 2]
                dist[i, j] = sqrt(dl * dl + da * da + db * db)
                d[i, j] = dist[i, j] - R[i]
    return dist_arr, d_arr


def membership_matrix(centers, jnds, X, bint literal=False, double surface_tol=1e-9,
                      int num_threads=1):
    cdef const double[:, ::1] C = np.ascontiguousarray(centers, dtype=np.float64)
    cdef const double[::1] R = np.ascontiguousarray(jnds, dtype=np.float64)
    cdef const double[:, ::1] P = np.ascontiguousarray(X, dtype=np.float64)
    cdef Py_ssize_t c = C.shape[0], n = P.shape[0], i, j, k, owner
    U_arr = np.empty((c, n))
    D_arr = np.empty((c, n))
    cdef double[:, ::1] U = U_arr
    cdef double[:, ::1] D = D_arr
    cdef double dl, da, db, dist, best, s, threshold

    # Columns are independent and write only to their own slots.
    for j in prange(n, nogil=True, num_threads=num_threads, schedule="static"):
        owner = -1
        best = INFINITY
        for i in range(c):
            dl = P[j, 0] - C[i, 0]
            da = P[j, 1] - C[i, 1]
            db = P[j, 2] - C[i, 2]
            dist = sqrt(dl * dl + da * da + db * db)
            D[i, j] = dist - R[i]
            if literal:
                threshold = R[i]
            else:
                threshold = surface_tol
            if D[i, j] <= threshold and D[i, j] < best:
                best = D[i, j]
                owner = i
        if owner >= 0:
            for i in range(c):
                U[i, j] = 0.0
            U[owner, j] = 1.0
        else:
            for i in range(c):
                s = 0.0
                for k in range(c):
                    s = s + D[i, j] / D[k, j]
                U[i, j] = 1.0 / s
    return U_arr


def weighted_centers(U, X):
    cdef const double[:, ::1] W = np.ascontiguousarray(U, dtype=np.float64)
    cdef const double[:, ::1] P = np.ascontiguousarray(X, dtype=np.float64)
    cdef Py_ssize_t c = W.shape[0], n = W.shape[1], i, j
    num_arr = np.zeros((c, 3))
    mass_arr = np.zeros(c)
    cdef double[:, ::1] num = num_arr
    cdef double[::1] mass = mass_arr
    cdef double u
    with nogil:
        for i in range(c):
            for j in range(n):
                u = W[i, j]
                num[i, 0] += u * P[j, 0]
                num[i, 1] += u * P[j, 1]
                num[i, 2] += u * P[j, 2]
                mass[i] += u
    with np.errstate(divide="ignore", invalid="ignore"):
        centers = num_arr / mass_arr[:, None]
    return centers, mass_arr


def objective(U, centers, jnds, X):
    cdef const double[:, ::1] W = np.ascontiguousarray(U, dtype=np.float64)
    cdef const double[:, ::1] C = np.ascontiguousarray(centers, dtype=np.float64)
    cdef const double[::1] R = np.ascontiguousarray(jnds, dtype=np.float64)
    cdef const double[:, ::1] P = np.ascontiguousarray(X, dtype=np.float64)
    cdef Py_ssize_t c = C.shape[0], n = P.shape[0], i, j
    cdef double dl, da, db, d, w, total = 0.0, clamped = 0.0
    with nogil:
        for i in range(c):
            for j in range(n):
                dl = P[j, 0] - C[i, 0]
                da = P[j, 1] - C[i, 1]
                db = P[j, 2] - C[i, 2]
                d = sqrt(dl * dl + da * da + db * db) - R[i]
                w = W[i, j] * W[i, j]
                total += w * d
                if d > 0:
                    clamped += w * d
    return total, clamped
