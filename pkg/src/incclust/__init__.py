"""Batch and incremental K-means and DBSCAN clustering, growth-vs-time
analysis, and a benchmark harness comparing the two incremental algorithms."""

from incclust import bench, dataset, dbscan, delta, kmeans
from incclust.dataset import (
    Dataset,
    Metric,
    distance,
    distance_calls,
    generate_synthetic,
    load_csv,
    reset_distance_calls,
    save_csv,
)
from incclust.dbscan import DbscanModel, DbscanParams
from incclust.delta import (
    ComparisonRow,
    CrossoverResult,
    NoCrossover,
    build_comparison,
    crossover_threshold,
    delta_percent,
)
from incclust.kmeans import KMeansModel

__all__ = [
    "bench",
    "dataset",
    "dbscan",
    "delta",
    "kmeans",
    "Dataset",
    "Metric",
    "distance",
    "distance_calls",
    "reset_distance_calls",
    "generate_synthetic",
    "load_csv",
    "save_csv",
    "DbscanModel",
    "DbscanParams",
    "KMeansModel",
    "ComparisonRow",
    "CrossoverResult",
    "NoCrossover",
    "build_comparison",
    "crossover_threshold",
    "delta_percent",
]

__version__ = "0.1.0"
