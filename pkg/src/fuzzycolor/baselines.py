"""Comparison algorithms: K-Means, fuzzy c-means and Vertan's JND membership.

All of them work on CIELAB points with plain Euclidean distance, so any
difference from the fuzzy-color algorithm comes from the algorithm and not
from the coordinate system.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

__all__ = [
    "CrispPartition",
    "KMeansResult",
    "FcmState",
    "FcmResult",
    "initial_centers",
    "squared_error",
    "kmeans",
    "fcm",
    "fcm_objective",
    "vertan_membership",
]


@dataclass
class CrispPartition:
    centers: np.ndarray
    labels: np.ndarray


@dataclass
class KMeansResult:
    partition: CrispPartition
    sse: float
    sse_history: list[float]
    iterations: int
    converged: bool
    restart: int = 0

    @property
    def centers(self) -> np.ndarray:
        return self.partition.centers

    @property
    def labels(self) -> np.ndarray:
        return self.partition.labels


@dataclass
class FcmState:
    centers: np.ndarray
    memberships: np.ndarray
    m: float


@dataclass
class FcmResult:
    state: FcmState
    objective: float
    j_history: list[float]
    iterations: int
    converged: bool

    @property
    def centers(self) -> np.ndarray:
        return self.state.centers

    @property
    def memberships(self) -> np.ndarray:
        return self.state.memberships

    @property
    def labels(self) -> np.ndarray:
        return np.argmax(self.state.memberships, axis=0)


def _points(X) -> np.ndarray:
    arr = np.asarray(X, dtype=np.float64)
    if arr.ndim != 2 or arr.shape[1] != 3 or len(arr) == 0:
        raise ValueError(f"color elements must have shape (n, 3) with n > 0, got {arr.shape}")
    return arr


def _sq_dists(X: np.ndarray, centers: np.ndarray) -> np.ndarray:
    """``(c, n)`` squared Euclidean distances."""
    diff = X[None, :, :] - centers[:, None, :]
    return np.einsum("cnk,cnk->cn", diff, diff)


def initial_centers(X, c: int, seed: int = 0) -> np.ndarray:
    """First ``c`` distinct elements of ``X`` in a ``seed``-shuffled order."""
    X = _points(X)
    if c < 1:
        raise ValueError(f"cluster count must be positive, got {c}")
    picked: list[np.ndarray] = []
    for j in np.random.default_rng(seed).permutation(len(X)):
        if not any(np.array_equal(X[j], p) for p in picked):
            picked.append(X[j])
            if len(picked) == c:
                return np.array(picked)
    raise ValueError(f"only {len(picked)} distinct elements for {c} clusters")


def squared_error(X, labels, centers) -> float:
    X = _points(X)
    diff = X - np.asarray(centers)[np.asarray(labels)]
    return float(np.sum(diff * diff))


def _means(X: np.ndarray, labels: np.ndarray, c: int) -> np.ndarray:
    counts = np.bincount(labels, minlength=c).astype(float)
    sums = np.zeros((c, 3))
    np.add.at(sums, labels, X)
    return sums / counts[:, None]


def _lloyd(X: np.ndarray, centers: np.ndarray, c: int, max_iterations: int) -> KMeansResult:
    labels = np.argmin(_sq_dists(X, centers), axis=0)
    history: list[float] = []
    converged = False
    iterations = 0
    for t in range(1, max_iterations + 1):
        counts = np.bincount(labels, minlength=c)
        for empty in np.flatnonzero(counts == 0):
            own = np.sum((X - centers[labels]) ** 2, axis=1)
            # never strip the last member from a singleton cluster
            own[np.bincount(labels, minlength=c)[labels] <= 1] = -1.0
            j = int(np.argmax(own))
            labels[j] = empty
        centers = _means(X, labels, c)
        history.append(squared_error(X, labels, centers))
        iterations = t
        new_labels = np.argmin(_sq_dists(X, centers), axis=0)
        if np.array_equal(new_labels, labels):
            converged = True
            break
        labels = new_labels
    return KMeansResult(CrispPartition(centers, labels), history[-1], history, iterations, converged, 0)


def kmeans(X, c: int, seed: int = 0, max_iterations: int = 100, init=None, restarts: int = 10) -> KMeansResult:
    """Lloyd's algorithm, keeping the lowest-error run of ``restarts`` seeded starts.

    Restart ``r`` initializes from ``initial_centers(X, c, seed + r)``; ties keep
    the earliest run. ``init`` gives a single run from fixed centers. If a
    cluster ends up empty, the element farthest from its own center is moved
    into it.
    """
    X = _points(X)
    if len(X) < c:
        raise ValueError(f"{len(X)} elements cannot form {c} clusters")
    if restarts < 1:
        raise ValueError(f"restarts must be positive, got {restarts}")
    if init is not None:
        return _lloyd(X, np.array(init, dtype=np.float64).reshape(c, 3), c, max_iterations)
    best = None
    for r in range(restarts):
        res = _lloyd(X, initial_centers(X, c, seed + r), c, max_iterations)
        if best is None or res.sse < best.sse:
            best = res
            best.restart = r
    return best


def _fcm_memberships(X: np.ndarray, centers: np.ndarray, m: float) -> np.ndarray:
    d2 = _sq_dists(X, centers)
    c, n = d2.shape
    U = np.empty((c, n))
    coincident = d2 == 0.0
    hit = coincident.any(axis=0)
    if (~hit).any():
        inv = d2[:, ~hit] ** (-1.0 / (m - 1.0))
        U[:, ~hit] = inv / inv.sum(axis=0)
    if hit.any():
        cols = np.flatnonzero(hit)
        U[:, cols] = 0.0
        U[np.argmax(coincident[:, cols], axis=0), cols] = 1.0
    return U


def fcm_objective(X, U, centers, m: float = 2.0) -> float:
    X = _points(X)
    return float(np.sum(np.asarray(U) ** m * _sq_dists(X, np.asarray(centers))))


def fcm(
    X,
    c: int,
    m: float = 2.0,
    seed: int = 0,
    epsilon: float = 1e-4,
    max_iterations: int = 100,
) -> FcmResult:
    """Bezdek's fuzzy c-means by alternating optimization.

    An element that coincides with a center is assigned to it crisply.
    """
    X = _points(X)
    if not m > 1:
        raise ValueError(f"fuzzifier must be > 1, got {m}")
    if len(X) < c:
        raise ValueError(f"{len(X)} elements cannot form {c} clusters")
    centers = initial_centers(X, c, seed)
    U = _fcm_memberships(X, centers, m)
    history = [fcm_objective(X, U, centers, m)]
    converged = False
    iterations = 0
    for t in range(1, max_iterations + 1):
        w = U**m
        centers = (w @ X) / w.sum(axis=1)[:, None]
        U_next = _fcm_memberships(X, centers, m)
        history.append(fcm_objective(X, U_next, centers, m))
        change = float(np.max(np.abs(U_next - U)))
        U = U_next
        iterations = t
        if change < epsilon:
            converged = True
            break
    return FcmResult(FcmState(centers, U, m), history[-1], history, iterations, converged)


def vertan_membership(d: float, jnd: float, sigma: float) -> float:
    """Vertan's membership of a color at distance ``d`` from a class color.

    1 within one JND, then ``max(0, 1 - d / (sigma * jnd))``. The second
    branch can start below 1, so the function may jump at ``d = jnd``.
    """
    if not jnd > 0:
        raise ValueError(f"jnd must be positive, got {jnd}")
    if not sigma > 0:
        raise ValueError(f"sigma must be positive, got {sigma}")
    if d < 0:
        raise ValueError(f"distance must be non-negative, got {d}")
    if d <= jnd:
        return 1.0
    return max(0.0, 1.0 - d / (sigma * jnd))
