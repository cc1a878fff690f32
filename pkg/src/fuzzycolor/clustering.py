"""Fuzzy clustering of color elements with fuzzy-color centroids.

Each cluster prototype is a fuzzy color ball. The algorithm:

1. score every element against the reference palette (winner counts and
   winner elements),
2. seed ``c`` centroids from the best-scoring reference colors,
3. recompute the ``c x n`` membership matrix with the relative-membership rule,
4. move centroid centers to the membership-weighted mean and re-snap their
   JND to the nearest reference color,
5. stop once no membership changes by more than ``epsilon``.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field

import numpy as np

from . import kernels
from .colorspace import LabColor
from .fuzzy_color import SURFACE_TOL, FuzzyColor, ReferencePalette, default_palette

log = logging.getLogger(__name__)

__all__ = [
    "ClusterConfig",
    "ClusterResult",
    "WinnerRecord",
    "ClusteringError",
    "ConfigError",
    "EmptyClusterError",
    "score_reference_colors",
    "create_initial_centroids",
    "update_memberships",
    "update_centroids",
    "evaluate_J",
    "harden",
    "cluster",
]

EMPTY_MASS = 1e-12


class ClusteringError(RuntimeError):
    pass


class ConfigError(ValueError):
    pass


class EmptyClusterError(ClusteringError):
    def __init__(self, cluster: int, mass: float, iteration: int | None = None):
        self.cluster = cluster
        self.mass = mass
        self.iteration = iteration
        where = "" if iteration is None else f" at iteration {iteration}"
        super().__init__(f"cluster {cluster} lost all membership mass ({mass:.3g}){where}")


@dataclass(frozen=True)
class ClusterConfig:
    c: int
    epsilon: float = 1e-4
    max_iterations: int = 100
    palette: ReferencePalette = field(default_factory=default_palette)
    seed: int = 0
    literal_containment: bool = False
    reseed_empty: bool = False
    # Weight of memberships in the centroid mean. 1 is the plain weighted mean;
    # with relative (1/delta) memberships it drags every center to the global
    # mean on separated data, so the default matches the mu**2 in the objective.
    centroid_exponent: float = 2.0

    def __post_init__(self):
        if not isinstance(self.c, (int, np.integer)) or self.c < 2:
            raise ConfigError(f"cluster count must be an integer >= 2, got {self.c!r}")
        if self.c > len(self.palette):
            raise ConfigError(f"cluster count {self.c} exceeds the {len(self.palette)} reference colors")
        if not self.epsilon > 0:
            raise ConfigError(f"epsilon must be positive, got {self.epsilon!r}")
        if not isinstance(self.max_iterations, (int, np.integer)) or self.max_iterations < 1:
            raise ConfigError(f"max_iterations must be a positive integer, got {self.max_iterations!r}")
        if not self.centroid_exponent >= 1:
            raise ConfigError(f"centroid_exponent must be >= 1, got {self.centroid_exponent!r}")


@dataclass(frozen=True)
class WinnerRecord:
    """Initialization bookkeeping for one reference color."""

    index: int
    name: str | None
    winner_count: int
    winner_element: LabColor | None
    element_index: int | None
    best_membership: float


@dataclass
class ClusterResult:
    centroids: list[FuzzyColor]
    memberships: np.ndarray
    j_history: list[float]
    j_clamped_history: list[float]
    iterations: int
    converged: bool
    labels: np.ndarray
    winners: list[WinnerRecord]
    seeded_centroids: int = 0
    reseeded: list[tuple[int, int]] = field(default_factory=list)

    @property
    def centers(self) -> np.ndarray:
        return np.array([fc.center for fc in self.centroids], dtype=np.float64)

    @property
    def jnds(self) -> np.ndarray:
        return np.array([fc.jnd for fc in self.centroids], dtype=np.float64)


def _points(X) -> np.ndarray:
    arr = np.asarray(X, dtype=np.float64)
    if arr.ndim != 2 or arr.shape[1] != 3:
        raise ValueError(f"color elements must have shape (n, 3), got {arr.shape}")
    if arr.shape[0] == 0:
        raise ValueError("no color elements given")
    if not np.all(np.isfinite(arr)):
        raise ValueError("color elements must be finite")
    return arr


def _split(centroids) -> tuple[np.ndarray, np.ndarray]:
    centers = np.array([fc.center for fc in centroids], dtype=np.float64).reshape(-1, 3)
    jnds = np.array([fc.jnd for fc in centroids], dtype=np.float64)
    return centers, jnds


def _join(centers: np.ndarray, jnds: np.ndarray) -> list[FuzzyColor]:
    return [FuzzyColor(LabColor(*ctr), jnd) for ctr, jnd in zip(centers.tolist(), jnds.tolist())]


def _snap_jnds(centers: np.ndarray, palette: ReferencePalette) -> np.ndarray:
    """JND of the reference color nearest (by signed distance) to each center."""
    _, d = kernels.delta_matrix(palette.centers, palette.jnds, centers)
    return palette.jnds[np.argmin(d, axis=0)]


def score_reference_colors(X, palette: ReferencePalette, literal: bool = False) -> list[WinnerRecord]:
    """Winner count and winner element for each reference color, most votes first.

    Every element votes once, for the reference color it has the highest
    membership to (lowest index on ties). A reference color's winner element is
    the element with the highest membership to it across all of ``X``.
    """
    X = _points(X)
    U = kernels.membership_matrix(palette.centers, palette.jnds, X, literal, SURFACE_TOL)
    votes = np.argmax(U, axis=0)
    counts = np.bincount(votes, minlength=len(palette))
    best = np.argmax(U, axis=1)
    records = []
    for k, fc in enumerate(palette):
        j = int(best[k])
        has = counts[k] > 0
        records.append(
            WinnerRecord(
                index=k,
                name=fc.name,
                winner_count=int(counts[k]),
                winner_element=LabColor(*X[j].tolist()) if has else None,
                element_index=j if has else None,
                best_membership=float(U[k, j]),
            )
        )
    # stable: equal counts keep palette order
    return sorted(records, key=lambda r: -r.winner_count)


def create_initial_centroids(
    winners: list[WinnerRecord],
    c: int,
    X,
    palette: ReferencePalette,
    seed: int = 0,
) -> list[FuzzyColor]:
    """Seed ``c`` centroids from the top winner records.

    Centers are the winner elements of the first ``c`` records with a non-zero
    count. If there are fewer such records, the rest are distinct elements of
    ``X`` drawn in a ``seed``-shuffled order. Each JND is taken from the
    reference color nearest to the new center.
    """
    X = _points(X)
    if c < 1:
        raise ConfigError(f"cluster count must be positive, got {c}")
    centers = [np.asarray(w.winner_element, dtype=np.float64) for w in winners if w.winner_count > 0][:c]
    if len(centers) < c:
        rng = np.random.default_rng(seed)
        for j in rng.permutation(len(X)):
            if len(centers) == c:
                break
            if not any(np.array_equal(X[j], ctr) for ctr in centers):
                centers.append(X[j].copy())
        if len(centers) < c:
            raise ClusteringError(f"only {len(centers)} distinct color elements for {c} clusters")
    centers_arr = np.array(centers).reshape(-1, 3)
    return _join(centers_arr, _snap_jnds(centers_arr, palette))


def update_memberships(centroids: list[FuzzyColor], X, literal: bool = False) -> np.ndarray:
    """``c x n`` membership matrix of ``X`` against the centroid balls."""
    centers, jnds = _split(centroids)
    if len(centers) == 0:
        raise ValueError("no centroids given")
    return kernels.membership_matrix(centers, jnds, _points(X), literal, SURFACE_TOL)


def _weighted_means(U: np.ndarray, X: np.ndarray, exponent: float = 1.0, iteration: int | None = None) -> np.ndarray:
    W = U if exponent == 1 else U**exponent
    centers, mass = kernels.weighted_centers(W, X)
    for i, m in enumerate(mass):
        if not m >= EMPTY_MASS:
            raise EmptyClusterError(i, float(m), iteration)
    return centers


def update_centroids(U, X, palette: ReferencePalette, exponent: float = 1.0) -> list[FuzzyColor]:
    """New centroids: membership-weighted mean centers, JND re-snapped to the palette.

    Each center is ``sum_j w_ij x_j / sum_j w_ij`` with ``w = mu**exponent``,
    summed in element order. :func:`cluster` passes
    ``ClusterConfig.centroid_exponent``. Raises EmptyClusterError when a row
    carries (almost) no weight.
    """
    X = _points(X)
    U = np.asarray(U, dtype=np.float64)
    if U.ndim != 2 or U.shape[1] != len(X):
        raise ValueError(f"membership matrix shape {U.shape} does not match {len(X)} elements")
    centers = _weighted_means(U, X, exponent)
    return _join(centers, _snap_jnds(centers, palette))


def evaluate_J(U, centroids: list[FuzzyColor], X, clamped: bool = False) -> float:
    """Objective ``sum_i sum_j mu_ij**2 * delta(c_i, x_j)``.

    The signed distance is used as-is, so elements inside a centroid ball
    contribute negative terms. ``clamped=True`` uses ``max(delta, 0)`` instead.
    """
    centers, jnds = _split(centroids)
    X = _points(X)
    U = np.asarray(U, dtype=np.float64)
    if U.shape != (len(centers), len(X)):
        raise ValueError(f"membership matrix shape {U.shape} does not match ({len(centers)}, {len(X)})")
    total, clipped = kernels.objective(U, centers, jnds, X)
    return clipped if clamped else total


def harden(U) -> np.ndarray:
    """Maximum-membership labels, lowest cluster index on ties."""
    return np.argmax(np.asarray(U), axis=0)


def cluster(X, config: ClusterConfig) -> ClusterResult:
    """Run the fuzzy-color clustering algorithm to convergence or ``max_iterations``."""
    X = _points(X)
    n = len(X)
    palette = config.palette
    literal = config.literal_containment
    if n < config.c:
        raise ConfigError(f"{n} color elements cannot form {config.c} clusters")

    winners = score_reference_colors(X, palette, literal)
    seeded = max(0, config.c - sum(1 for w in winners if w.winner_count > 0))
    if seeded:
        log.warning("only %d reference colors won elements; seeding %d centroids from data", config.c - seeded, seeded)
    centers, jnds = _split(create_initial_centroids(winners, config.c, X, palette, config.seed))

    U = kernels.membership_matrix(centers, jnds, X, literal, SURFACE_TOL)
    J, Jc = kernels.objective(U, centers, jnds, X)
    j_hist, jc_hist = [J], [Jc]
    reseeded: list[tuple[int, int]] = []
    converged = False
    iterations = 0

    for t in range(1, config.max_iterations + 1):
        attempts = 0
        while True:
            try:
                new_centers = _weighted_means(U, X, config.centroid_exponent, iteration=t)
                break
            except EmptyClusterError as exc:
                attempts += 1
                if not config.reseed_empty or attempts > config.c:
                    raise
                # Worst-explained element becomes the dead cluster's sole member.
                j = int(np.argmin(U.max(axis=0)))
                log.warning("%s; reseeding from element %d", exc, j)
                U = U.copy()
                U[:, j] = 0.0
                U[exc.cluster, j] = 1.0
                reseeded.append((t, exc.cluster))
        centers, jnds = new_centers, _snap_jnds(new_centers, palette)
        U_next = kernels.membership_matrix(centers, jnds, X, literal, SURFACE_TOL)
        J, Jc = kernels.objective(U_next, centers, jnds, X)
        j_hist.append(J)
        jc_hist.append(Jc)
        change = float(np.max(np.abs(U_next - U)))
        U = U_next
        iterations = t
        log.debug("iteration %d: J=%.6g max membership change=%.3g", t, J, change)
        if change < config.epsilon:
            converged = True
            break

    return ClusterResult(
        centroids=_join(centers, jnds),
        memberships=U,
        j_history=j_hist,
        j_clamped_history=jc_hist,
        iterations=iterations,
        converged=converged,
        labels=harden(U),
        winners=winners,
        seeded_centroids=seeded,
        reseeded=reseeded,
    )
