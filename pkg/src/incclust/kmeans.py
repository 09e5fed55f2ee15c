"""Batch K-means (Lloyd iteration) and incremental nearest-mean insertion.

The incremental path assigns each arriving point directly against the current
cluster means instead of re-running the batch fit. An optional rejection
radius turns far-away arrivals into outliers; without it every point is
accepted by its nearest cluster. The cluster count is fixed when the model is
created and never changes afterwards.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from incclust.dataset import Dataset, Metric, as_point, distance, distances_to_all, pairwise_distances

_FORMAT = "kmeans-model"
_VERSION = 1


@dataclass(frozen=True)
class InsertOutcome:
    """Result of inserting one point: the cluster it joined, or None for an outlier."""

    cluster: int | None
    distance: float

    @property
    def is_outlier(self) -> bool:
        return self.cluster is None


class KMeansModel:
    """k cluster means plus the membership of every point inserted so far.

    Points live in one insertion-ordered store; clusters and the outlier pool
    hold indices into it, so each inserted point sits in exactly one place.
    """

    def __init__(self, centroids, metric: Metric, outlier_radius: float | None = None):
        C = np.asarray(centroids, dtype=np.float64)
        if C.ndim != 2 or C.shape[0] < 1:
            raise ValueError(f"centroids must form a non-empty (k, dim) array, got shape {C.shape}")
        if not np.all(np.isfinite(C)):
            raise ValueError("centroids must be finite")
        if outlier_radius is not None and outlier_radius < 0:
            raise ValueError(f"outlier_radius must be non-negative, got {outlier_radius}")
        self._centroids = C.copy()
        self.metric = Metric(metric)
        self.outlier_radius = outlier_radius
        self._points: list[np.ndarray] = []
        self._members: list[list[int]] = [[] for _ in range(C.shape[0])]
        self._outlier_indices: list[int] = []
        # Per-iteration Lloyd objective: within-cluster sum of squared
        # Euclidean distances to the assigned centroid, measured at each
        # assignment pass. Mean updates minimise exactly this quantity, so it
        # is non-increasing whenever assignment is Euclidean too. Filled in
        # by fit().
        self.objective_history: list[float] = []

    @property
    def k(self) -> int:
        return self._centroids.shape[0]

    @property
    def dim(self) -> int:
        return self._centroids.shape[1]

    @property
    def centroids(self) -> np.ndarray:
        return self._centroids

    @property
    def members(self) -> list[list[int]]:
        return self._members

    @property
    def points(self) -> np.ndarray:
        if not self._points:
            return np.empty((0, self.dim))
        return np.vstack(self._points)

    @property
    def outlier_indices(self) -> list[int]:
        return self._outlier_indices

    @property
    def outliers(self) -> list[np.ndarray]:
        return [self._points[i] for i in self._outlier_indices]

    @property
    def total_inserted(self) -> int:
        return len(self._points)

    def assign(self, p) -> tuple[int, float]:
        """Nearest cluster for a point: (cluster index, distance). Ties go to
        the lowest index. Pure query, the model is not changed."""
        p = as_point(p, self.dim)
        d = distances_to_all(self.metric, p, self._centroids)
        j = int(np.argmin(d))
        return j, float(d[j])

    def insert(self, new_points, update_centroids: bool = True) -> list[InsertOutcome]:
        """Insert points one by one against the current means.

        A point whose nearest-mean distance exceeds outlier_radius (when set)
        goes to the outlier pool; otherwise it joins the nearest cluster.
        With update_centroids the winning mean becomes the running mean of
        its members before the next point is processed. A dimension mismatch
        anywhere in the batch rejects the whole batch, model unchanged.
        """
        pts = [as_point(p, self.dim) for p in new_points]
        outcomes = []
        for p in pts:
            j, d = self.assign(p)
            idx = len(self._points)
            self._points.append(p)
            if self.outlier_radius is not None and d > self.outlier_radius:
                self._outlier_indices.append(idx)
                outcomes.append(InsertOutcome(None, d))
                continue
            self._members[j].append(idx)
            if update_centroids:
                n = len(self._members[j])
                self._centroids[j] = (self._centroids[j] * (n - 1) + p) / n
            outcomes.append(InsertOutcome(j, d))
        return outcomes

    def recomputed_centroid(self, j: int) -> np.ndarray:
        """The arithmetic mean of cluster j's members, computed from scratch."""
        member_pts = [self._points[i] for i in self._members[j]]
        if not member_pts:
            return self._centroids[j].copy()
        return np.vstack(member_pts).mean(axis=0)

    def copy(self) -> "KMeansModel":
        m = KMeansModel(self._centroids, self.metric, self.outlier_radius)
        m._points = [p.copy() for p in self._points]
        m._members = [list(g) for g in self._members]
        m._outlier_indices = list(self._outlier_indices)
        m.objective_history = list(self.objective_history)
        return m

    def to_json(self) -> dict:
        return {
            "format": _FORMAT,
            "version": _VERSION,
            "metric": self.metric.value,
            "k": self.k,
            "dim": self.dim,
            "outlier_radius": self.outlier_radius,
            "centroids": self._centroids.tolist(),
            "points": [p.tolist() for p in self._points],
            "members": [list(g) for g in self._members],
            "outliers": list(self._outlier_indices),
        }

    @classmethod
    def from_json(cls, doc: dict) -> "KMeansModel":
        if doc.get("format") != _FORMAT:
            raise ValueError(f"not a {_FORMAT} document: format={doc.get('format')!r}")
        if doc.get("version") != _VERSION:
            raise ValueError(f"unsupported {_FORMAT} version {doc.get('version')!r}")
        m = cls(np.array(doc["centroids"]), Metric.parse(doc["metric"]), doc.get("outlier_radius"))
        if len(doc["members"]) != m.k:
            raise ValueError(f"document has {len(doc['members'])} member lists for k={m.k}")
        m._points = [as_point(p, m.dim) for p in doc["points"]]
        m._members = [list(map(int, g)) for g in doc["members"]]
        m._outlier_indices = list(map(int, doc["outliers"]))
        return m


def fit(
    data: Dataset,
    k: int,
    metric: Metric,
    init_seed: int = 0,
    max_iter: int = 100,
    tol: float = 1e-6,
    initial_centroids=None,
    outlier_radius: float | None = None,
) -> KMeansModel:
    """Batch K-means via Lloyd iteration.

    Centroids start at k distinct data points drawn with init_seed unless
    initial_centroids is given. Iteration alternates assign-to-nearest and
    recompute-means until assignments stabilise, the largest centroid shift
    drops below tol, or max_iter passes. Ties go to the lowest cluster index;
    a cluster left empty keeps its previous centroid. outlier_radius only
    arms later insert() calls, it does not affect the fit itself.

    The returned model's objective_history holds the Lloyd objective (sum of
    squared Euclidean distances to the assigned centroid) per assignment
    pass; with the Euclidean metric it is guaranteed non-increasing.
    """
    n = len(data)
    if n == 0:
        raise ValueError("cannot fit on an empty dataset")
    if k < 1:
        raise ValueError(f"k must be at least 1, got {k}")
    if k > n:
        raise ValueError(f"k={k} exceeds the {n} available points")
    if max_iter < 1:
        raise ValueError(f"max_iter must be at least 1, got {max_iter}")
    X = data.points

    if initial_centroids is not None:
        C = np.asarray(initial_centroids, dtype=np.float64).copy()
        if C.shape != (k, data.dim):
            raise ValueError(f"initial_centroids must have shape {(k, data.dim)}, got {C.shape}")
    else:
        rng = np.random.default_rng(init_seed)
        C = X[rng.choice(n, size=k, replace=False)].copy()

    history = []
    labels = np.zeros(n, dtype=int)
    prev_labels = None
    for _ in range(max_iter):
        D = pairwise_distances(metric, X, C)
        labels = D.argmin(axis=1)
        diff = X - C[labels]
        history.append(float((diff * diff).sum()))
        if prev_labels is not None and np.array_equal(labels, prev_labels):
            break
        newC = C.copy()
        for j in range(k):
            mask = labels == j
            if mask.any():
                newC[j] = X[mask].mean(axis=0)
        shift = max(distance(metric, C[j], newC[j]) for j in range(k))
        C = newC
        prev_labels = labels
        if shift < tol:
            break

    model = KMeansModel(C, metric, outlier_radius)
    model._points = [X[i].copy() for i in range(n)]
    model._members = [np.flatnonzero(labels == j).tolist() for j in range(k)]
    model.objective_history = history
    return model
