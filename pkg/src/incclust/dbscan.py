"""Batch DBSCAN and incremental mean-distance insertion with noise promotion.

Batch fit is the standard density-reachability algorithm: a core point has at
least min_pts points (itself included) inside its closed eps-ball, clusters
are maximal density-connected sets, everything unreachable is noise.

The incremental path deliberately skips density-reachability re-checking. An
arriving point joins the cluster whose cached mean is nearest, provided that
distance is within eps and the cluster is strictly larger than min_pts;
otherwise it pools as noise. After each insert batch the noise pool is scanned
once, and any eps-connected group of at least min_pts noise points is promoted
to a brand-new cluster. The cluster count can therefore grow without a re-fit.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass

import numpy as np

from incclust.dataset import Dataset, Metric, as_point, distances_to_all, pairwise_distances

_FORMAT = "dbscan-model"
_VERSION = 1


@dataclass(frozen=True)
class DbscanParams:
    eps: float
    min_pts: int
    metric: Metric

    def __post_init__(self):
        if self.eps <= 0:
            raise ValueError(f"eps must be positive, got {self.eps}")
        if self.min_pts < 1:
            raise ValueError(f"min_pts must be at least 1, got {self.min_pts}")
        object.__setattr__(self, "metric", Metric(self.metric))


class Cluster:
    """One cluster: member indices into the model's point store plus a cached mean."""

    def __init__(self, members: list[int], mean: np.ndarray):
        self.members = members
        self.mean = mean

    def __len__(self) -> int:
        return len(self.members)


@dataclass(frozen=True)
class InsertOutcome:
    """Result of inserting one point: the cluster it joined, or None for noise."""

    cluster: int | None
    mean_distance: float

    @property
    def is_noise(self) -> bool:
        return self.cluster is None


class DbscanModel:
    def __init__(self, params: DbscanParams, dim: int):
        if dim < 1:
            raise ValueError(f"dim must be positive, got {dim}")
        self.params = params
        self._dim = dim
        self._points: list[np.ndarray] = []
        self.clusters: list[Cluster] = []
        self._noise: list[int] = []

    @property
    def dim(self) -> int:
        return self._dim

    @property
    def total_points(self) -> int:
        return len(self._points)

    @property
    def cluster_count(self) -> int:
        return len(self.clusters)

    @property
    def noise_count(self) -> int:
        return len(self._noise)

    @property
    def noise_indices(self) -> list[int]:
        return self._noise

    @property
    def noise_points(self) -> list[np.ndarray]:
        return [self._points[i] for i in self._noise]

    @property
    def points(self) -> np.ndarray:
        if not self._points:
            return np.empty((0, self._dim))
        return np.vstack(self._points)

    def labels(self) -> np.ndarray:
        """Cluster index per stored point, -1 for noise."""
        out = np.full(self.total_points, -1, dtype=int)
        for c_idx, cluster in enumerate(self.clusters):
            for i in cluster.members:
                out[i] = c_idx
        return out

    def insert(self, new_points) -> list[InsertOutcome]:
        """Insert points against the cached cluster means, then promote noise once.

        A point joins the nearest-mean cluster among those with mean distance
        <= eps and size strictly greater than min_pts (ties to the lowest
        index); the winning mean becomes the running mean of its members. A
        point with no qualifying cluster pools as noise. A dimension mismatch
        anywhere in the batch rejects the whole batch, model unchanged.
        """
        pts = [as_point(p, self._dim) for p in new_points]
        eps, min_pts = self.params.eps, self.params.min_pts
        outcomes = []
        for p in pts:
            idx = len(self._points)
            self._points.append(p)
            best = None
            best_d = math.inf
            if self.clusters:
                means = np.vstack([c.mean for c in self.clusters])
                d = distances_to_all(self.params.metric, p, means)
                best_d = float(d.min())
                for j in range(len(self.clusters)):
                    if d[j] <= eps and len(self.clusters[j]) > min_pts:
                        if best is None or d[j] < d[best]:
                            best = j
            if best is None:
                self._noise.append(idx)
                outcomes.append(InsertOutcome(None, best_d))
            else:
                cluster = self.clusters[best]
                cluster.members.append(idx)
                n = len(cluster.members)
                cluster.mean = (cluster.mean * (n - 1) + p) / n
                outcomes.append(InsertOutcome(best, float(d[best])))
        self.promote_noise()
        return outcomes

    def promote_noise(self) -> list[int]:
        """Turn eps-connected noise groups of size >= min_pts into new clusters.

        Components are formed over noise points only and promoted in order of
        their smallest member insertion index; smaller groups stay in the
        pool. Idempotent: a second run right after changes nothing. Returns
        the indices of the new clusters.
        """
        if not self._noise:
            return []
        noise_idx = list(self._noise)
        P = np.vstack([self._points[i] for i in noise_idx])
        adj = pairwise_distances(self.params.metric, P) <= self.params.eps

        seen = [False] * len(noise_idx)
        new_cluster_ids = []
        promoted: set[int] = set()
        for start in range(len(noise_idx)):
            if seen[start]:
                continue
            comp = []
            queue = deque([start])
            seen[start] = True
            while queue:
                q = queue.popleft()
                comp.append(q)
                for nb in np.flatnonzero(adj[q]):
                    if not seen[nb]:
                        seen[nb] = True
                        queue.append(int(nb))
            if len(comp) >= self.params.min_pts:
                members = [noise_idx[i] for i in sorted(comp)]
                mean = np.vstack([self._points[i] for i in members]).mean(axis=0)
                self.clusters.append(Cluster(members, mean))
                new_cluster_ids.append(len(self.clusters) - 1)
                promoted.update(comp)
        if promoted:
            self._noise = [noise_idx[i] for i in range(len(noise_idx)) if i not in promoted]
        return new_cluster_ids

    def copy(self) -> "DbscanModel":
        m = DbscanModel(self.params, self._dim)
        m._points = [p.copy() for p in self._points]
        m.clusters = [Cluster(list(c.members), c.mean.copy()) for c in self.clusters]
        m._noise = list(self._noise)
        return m

    def to_json(self) -> dict:
        return {
            "format": _FORMAT,
            "version": _VERSION,
            "eps": self.params.eps,
            "min_pts": self.params.min_pts,
            "metric": self.params.metric.value,
            "dim": self._dim,
            "points": [p.tolist() for p in self._points],
            "clusters": [{"members": list(c.members), "mean": c.mean.tolist()} for c in self.clusters],
            "noise": list(self._noise),
        }

    @classmethod
    def from_json(cls, doc: dict) -> "DbscanModel":
        if doc.get("format") != _FORMAT:
            raise ValueError(f"not a {_FORMAT} document: format={doc.get('format')!r}")
        if doc.get("version") != _VERSION:
            raise ValueError(f"unsupported {_FORMAT} version {doc.get('version')!r}")
        params = DbscanParams(doc["eps"], doc["min_pts"], Metric.parse(doc["metric"]))
        m = cls(params, int(doc["dim"]))
        m._points = [as_point(p, m.dim) for p in doc["points"]]
        m.clusters = [
            Cluster(list(map(int, c["members"])), as_point(c["mean"], m.dim)) for c in doc["clusters"]
        ]
        m._noise = list(map(int, doc["noise"]))
        return m


def fit(data: Dataset, params: DbscanParams) -> DbscanModel:
    """Standard batch DBSCAN, deterministic in dataset index order.

    Points are scanned in order; each unclaimed core point seeds the next
    cluster and the cluster grows breadth-first through core neighbours. A
    border point reachable from several clusters keeps the label of the
    cluster discovered first.
    """
    n = len(data)
    if n == 0:
        raise ValueError("cannot fit on an empty dataset")
    X = data.points
    D = pairwise_distances(params.metric, X)
    neighbors = [np.flatnonzero(D[i] <= params.eps) for i in range(n)]
    core = np.array([len(nb) >= params.min_pts for nb in neighbors])

    labels = np.full(n, -1, dtype=int)
    cluster_id = 0
    for i in range(n):
        if labels[i] != -1 or not core[i]:
            continue
        labels[i] = cluster_id
        queue = deque([i])
        while queue:
            q = queue.popleft()
            for nb in neighbors[q]:
                if labels[nb] == -1:
                    labels[nb] = cluster_id
                    if core[nb]:
                        queue.append(int(nb))
        cluster_id += 1

    model = DbscanModel(params, data.dim)
    model._points = [X[i].copy() for i in range(n)]
    for j in range(cluster_id):
        members = np.flatnonzero(labels == j).tolist()
        model.clusters.append(Cluster(members, X[members].mean(axis=0)))
    model._noise = np.flatnonzero(labels == -1).tolist()
    return model
