"""Numpy implementation of the bulk kernels.

Used when the compiled extension is unavailable, or when forced with
``FUZZYCOLOR_BACKEND=python``. Signatures and semantics mirror ``_ckernels``.
"""

from __future__ import annotations

import numpy as np

_CHUNK = 1 << 15


def delta_matrix(centers, jnds, X):
    """``(c, n)`` signed distances ``rho(center_i, x_j) - jnd_i``."""
    centers = np.ascontiguousarray(centers, dtype=np.float64)
    X = np.ascontiguousarray(X, dtype=np.float64)
    dl = X[None, :, 0] - centers[:, 0, None]
    da = X[None, :, 1] - centers[:, 1, None]
    db = X[None, :, 2] - centers[:, 2, None]
    dist = np.sqrt(dl * dl + da * da + db * db)
    return dist, dist - np.asarray(jnds, dtype=np.float64)[:, None]


def membership_matrix(centers, jnds, X, literal=False, surface_tol=1e-9):
    jnds = np.asarray(jnds, dtype=np.float64)
    _, d = delta_matrix(centers, jnds, X)
    c, n = d.shape
    threshold = jnds[:, None] if literal else surface_tol
    inside = d <= threshold
    claimed = inside.any(axis=0)

    U = np.empty((c, n))
    # Outside every ball: all deltas are positive in these columns.
    free = ~claimed
    if free.any():
        df = d[:, free]
        s = np.zeros_like(df)
        for k in range(c):
            s += df / df[k]
        U[:, free] = 1.0 / s
    if claimed.any():
        owner = np.argmin(np.where(inside[:, claimed], d[:, claimed], np.inf), axis=0)
        U[:, claimed] = 0.0
        cols = np.flatnonzero(claimed)
        U[owner, cols] = 1.0
    return U


def weighted_centers(U, X):
    """Membership-weighted means, summed strictly in element order.

    Returns ``(centers, mass)``; rows with zero mass give non-finite centers
    and are the caller's problem.
    """
    U = np.asarray(U, dtype=np.float64)
    X = np.asarray(X, dtype=np.float64)
    c, n = U.shape
    num = np.zeros((c, 3))
    mass = np.zeros(c)
    # cumsum is a sequential scan; seeding each chunk with the running total
    # keeps the whole reduction left-to-right.
    for start in range(0, n, _CHUNK):
        u = U[:, start : start + _CHUNK]
        prod = u[:, :, None] * X[None, start : start + _CHUNK, :]
        num = np.cumsum(np.concatenate([num[:, None, :], prod], axis=1), axis=1)[:, -1]
        mass = np.cumsum(np.concatenate([mass[:, None], u], axis=1), axis=1)[:, -1]
    with np.errstate(divide="ignore", invalid="ignore"):
        centers = num / mass[:, None]
    return centers, mass


def objective(U, centers, jnds, X):
    """Return ``(J, J_clamped)`` where J sums ``mu**2 * delta``."""
    _, d = delta_matrix(centers, jnds, X)
    w = np.asarray(U, dtype=np.float64) ** 2
    return float(np.sum(w * d)), float(np.sum(w * np.maximum(d, 0.0)))
