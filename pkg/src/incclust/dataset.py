"""Point datasets, distance metrics, CSV ingestion, and synthetic data generation.

Points are plain 1-D numpy float64 arrays; a Dataset wraps an (n, dim) array
with a fixed dimension and stable row order.
"""

from __future__ import annotations

import math
from enum import Enum
from pathlib import Path

import numpy as np


class Metric(str, Enum):
    MANHATTAN = "manhattan"
    EUCLIDEAN = "euclidean"

    @classmethod
    def parse(cls, name: str) -> "Metric":
        try:
            return cls(str(name).lower())
        except ValueError:
            valid = ", ".join(m.value for m in cls)
            raise ValueError(f"unknown metric {name!r} (expected one of: {valid})") from None


# Running tally of pairwise distance evaluations. Every distance helper below
# adds the number of point pairs it evaluates, so vectorised calls count the
# same as an equivalent loop. Benchmark timing is strictly sequential, which
# is what makes a module-level counter adequate here.
_distance_calls = 0


def distance_calls() -> int:
    """Total distance evaluations performed so far (monotone counter)."""
    return _distance_calls


def reset_distance_calls() -> None:
    global _distance_calls
    _distance_calls = 0


def _count(n: int) -> None:
    global _distance_calls
    _distance_calls += n


def as_point(p, dim: int | None = None) -> np.ndarray:
    """Validate and convert a point to a 1-D float64 array.

    Raises ValueError for empty or non-finite coordinates, or when `dim` is
    given and does not match.
    """
    a = np.asarray(p, dtype=np.float64)
    if a.ndim != 1 or a.size == 0:
        raise ValueError(f"point must be a non-empty 1-D coordinate vector, got shape {a.shape}")
    if not np.all(np.isfinite(a)):
        raise ValueError(f"point has non-finite coordinates: {a.tolist()}")
    if dim is not None and a.size != dim:
        raise ValueError(f"dimension mismatch: point has {a.size} coordinates, expected {dim}")
    return a


def distance(metric: Metric, a, b) -> float:
    """Distance between two points under the given metric.

    Manhattan is the coordinate-wise absolute difference sum, Euclidean the
    usual L2 norm of the difference.
    """
    a = np.asarray(a, dtype=np.float64)
    b = np.asarray(b, dtype=np.float64)
    if a.shape != b.shape:
        raise ValueError(f"dimension mismatch: {a.size} vs {b.size}")
    _count(1)
    diff = a - b
    if metric == Metric.MANHATTAN:
        return float(np.abs(diff).sum())
    return float(np.sqrt((diff * diff).sum()))


def distances_to_all(metric: Metric, p, points) -> np.ndarray:
    """Distances from one point to each row of `points` (shape (m, dim))."""
    p = np.asarray(p, dtype=np.float64)
    pts = np.asarray(points, dtype=np.float64)
    if pts.ndim != 2 or pts.shape[1] != p.size:
        raise ValueError(f"dimension mismatch: point has {p.size} coordinates, targets have shape {pts.shape}")
    _count(pts.shape[0])
    diff = pts - p
    if metric == Metric.MANHATTAN:
        return np.abs(diff).sum(axis=1)
    return np.sqrt((diff * diff).sum(axis=1))


def pairwise_distances(metric: Metric, X, Y=None) -> np.ndarray:
    """Full (n, m) distance matrix between the rows of X and Y (Y defaults to X)."""
    X = np.asarray(X, dtype=np.float64)
    Y = X if Y is None else np.asarray(Y, dtype=np.float64)
    if X.ndim != 2 or Y.ndim != 2 or X.shape[1] != Y.shape[1]:
        raise ValueError(f"dimension mismatch: shapes {X.shape} vs {Y.shape}")
    _count(X.shape[0] * Y.shape[0])
    diff = X[:, None, :] - Y[None, :, :]
    if metric == Metric.MANHATTAN:
        return np.abs(diff).sum(axis=2)
    return np.sqrt((diff * diff).sum(axis=2))


class Dataset:
    """An ordered collection of points sharing one fixed dimension."""

    def __init__(self, points, dim: int | None = None):
        pts = np.asarray(points, dtype=np.float64)
        if pts.size == 0:
            if dim is None:
                raise ValueError("empty dataset needs an explicit dim")
            pts = pts.reshape(0, dim)
        if pts.ndim != 2:
            raise ValueError(f"points must form an (n, dim) array, got shape {pts.shape}")
        if pts.shape[1] == 0:
            raise ValueError("points must have at least one coordinate")
        if dim is not None and pts.shape[1] != dim:
            raise ValueError(f"dimension mismatch: points have {pts.shape[1]} coordinates, expected {dim}")
        if not np.all(np.isfinite(pts)):
            bad = np.argwhere(~np.isfinite(pts))[0]
            raise ValueError(f"non-finite value at point {bad[0]}, coordinate {bad[1]}")
        self._points = pts

    @property
    def points(self) -> np.ndarray:
        return self._points

    @property
    def dim(self) -> int:
        return self._points.shape[1]

    def __len__(self) -> int:
        return self._points.shape[0]

    def __getitem__(self, i) -> np.ndarray:
        return self._points[i]

    def head(self, n: int) -> "Dataset":
        """The first n points, in order."""
        return Dataset(self._points[:n], dim=self.dim)

    def __repr__(self) -> str:
        return f"Dataset(n={len(self)}, dim={self.dim})"


def _parse_field(field: str) -> float | None:
    """Parse a CSV field as a finite float, or None if it is not one."""
    try:
        v = float(field)
    except ValueError:
        return None
    return v if math.isfinite(v) else None


def load_csv(path, dim: int) -> Dataset:
    """Read a comma-separated point file into a Dataset.

    One point per row, `dim` numeric fields each. A single leading header row
    is skipped when none of its fields parses as a number. Errors name the
    offending row and column (1-based, counting physical file lines).
    """
    if dim < 1:
        raise ValueError(f"dim must be positive, got {dim}")
    path = Path(path)
    if not path.exists():
        raise FileNotFoundError(f"no such dataset file: {path}")
    with open(path, encoding="utf-8") as f:
        lines = f.read().split("\n")
    if lines and lines[-1] == "":
        lines.pop()

    rows = []
    start = 0
    if lines:
        first = lines[0].split(",")
        if all(_parse_field(field.strip()) is None for field in first):
            start = 1
    for lineno in range(start, len(lines)):
        fields = lines[lineno].split(",")
        if len(fields) != dim:
            raise ValueError(f"{path}: row {lineno + 1}: expected {dim} fields, found {len(fields)}")
        coords = []
        for col, field in enumerate(fields):
            v = _parse_field(field.strip())
            if v is None:
                raise ValueError(f"{path}: row {lineno + 1}, column {col + 1}: invalid number {field.strip()!r}")
            coords.append(v)
        rows.append(coords)
    return Dataset(np.array(rows, dtype=np.float64) if rows else np.empty((0, dim)), dim=dim)


def save_csv(dataset: Dataset, path, header: list[str] | None = None) -> None:
    """Write a Dataset as CSV with '\\n' line endings.

    Floats use Python's shortest round-trip decimal form, so save -> load ->
    save reproduces the file byte for byte.
    """
    with open(path, "w", encoding="utf-8", newline="") as f:
        if header is not None:
            f.write(",".join(header) + "\n")
        for row in dataset.points:
            f.write(",".join(repr(float(v)) for v in row) + "\n")


def blob_centers(n_blobs: int, dim: int, blob_spread: float) -> np.ndarray:
    """Deterministic blob centers on a lattice with spacing 20 * blob_spread.

    Lattice placement (rather than random draws) is what guarantees the
    centers are well separated for every seed.
    """
    if n_blobs < 1:
        raise ValueError(f"n_blobs must be at least 1, got {n_blobs}")
    if dim < 1:
        raise ValueError(f"dim must be positive, got {dim}")
    if blob_spread <= 0:
        raise ValueError(f"blob_spread must be positive, got {blob_spread}")
    side = math.ceil(n_blobs ** (1.0 / dim))
    spacing = 20.0 * blob_spread
    centers = np.zeros((n_blobs, dim))
    for i in range(n_blobs):
        rest = i
        for axis in range(dim):
            centers[i, axis] = (rest % side) * spacing
            rest //= side
    return centers


def generate_synthetic(
    n: int,
    dim: int,
    n_blobs: int,
    blob_spread: float,
    outlier_fraction: float,
    seed: int,
) -> Dataset:
    """Generate n points: Gaussian blobs plus far-away outliers.

    round(outlier_fraction * n) points are placed at least 10 * blob_spread
    (Euclidean, hence also Manhattan) from every blob center; the rest are
    drawn N(center, blob_spread) around lattice centers. Rows are shuffled so
    any prefix of the dataset is a representative workload. Fully
    deterministic for a fixed seed.
    """
    if n < 0:
        raise ValueError(f"n must be non-negative, got {n}")
    if not 0.0 <= outlier_fraction <= 1.0:
        raise ValueError(f"outlier_fraction must be in [0, 1], got {outlier_fraction}")
    centers = blob_centers(n_blobs, dim, blob_spread)
    if n == 0:
        return Dataset(np.empty((0, dim)), dim=dim)

    rng = np.random.default_rng(seed)
    n_out = int(round(outlier_fraction * n))
    n_blob = n - n_out

    assignment = rng.integers(0, n_blobs, size=n_blob)
    blob_pts = centers[assignment] + rng.normal(0.0, blob_spread, size=(n_blob, dim))

    outliers = np.empty((n_out, dim))
    for i in range(n_out):
        while True:
            direction = rng.normal(size=dim)
            norm = np.linalg.norm(direction)
            if norm == 0.0:
                continue
            radius = rng.uniform(12.0, 30.0) * blob_spread
            candidate = centers[rng.integers(0, n_blobs)] + direction / norm * radius
            gaps = np.sqrt(((centers - candidate) ** 2).sum(axis=1))
            if gaps.min() >= 10.0 * blob_spread:
                outliers[i] = candidate
                break

    pts = np.vstack([blob_pts, outliers]) if n_out else blob_pts
    return Dataset(pts[rng.permutation(n)], dim=dim)
