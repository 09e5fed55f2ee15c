"""How the two incremental algorithms treat arriving points, especially far
ones: nearest-mean K-means either swallows or rejects them, while the
mean-distance DBSCAN variant pools them as noise and can promote the pool
into a brand-new cluster.

Run with: python demos/01_incremental_clustering.py
"""

from incclust import Dataset, DbscanParams, KMeansModel, Metric, dbscan

# A small 2-D working set: three tight groups plus one far-away point.
POINTS = [(4, 6), (112, 94), (9, 15), (4, 9), (8, 17), (3, 2), (1, 4), (1, 7), (10, 9)]
MEANS = [(4, 6), (4, 9), (3, 2)]
ARRIVALS = [(155, 112), (99, 125)]

print("=== K-means: nearest-mean assignment ===")
model = KMeansModel(MEANS, Metric.MANHATTAN)
cluster, dist = model.assign((9, 15))
print(f"(9,15) is nearest to mean {MEANS[cluster]} at Manhattan distance {dist:.0f}")

print("\n--- without a rejection radius, everything is accepted ---")
open_model = KMeansModel(MEANS, Metric.MANHATTAN)
for p, outcome in zip(ARRIVALS, open_model.insert(ARRIVALS)):
    print(f"{p} -> cluster {outcome.cluster} (distance {outcome.distance:.0f})")

print("\n--- with outlier_radius=50, far points enter no cluster ---")
armed = KMeansModel(MEANS, Metric.MANHATTAN, outlier_radius=50)
for p, outcome in zip(ARRIVALS, armed.insert(ARRIVALS)):
    label = "OUTLIER" if outcome.is_outlier else f"cluster {outcome.cluster}"
    print(f"{p} -> {label} (nearest mean at {outcome.distance:.0f})")
print(f"cluster count is still {armed.k}; K-means never grows new clusters.")

print("\n=== DBSCAN: noise pooling and promotion ===")
params = DbscanParams(eps=70, min_pts=2, metric=Metric.MANHATTAN)
model = dbscan.fit(Dataset([(112, 94)]), params)
pool = [tuple(map(float, p)) for p in model.noise_points]
print(f"start: {model.cluster_count} clusters, noise pool {pool}")

outcomes = model.insert(ARRIVALS)
for p, outcome in zip(ARRIVALS, outcomes):
    print(f"{p} -> {'noise' if outcome.is_noise else f'cluster {outcome.cluster}'}")

print(f"after promotion: {model.cluster_count} cluster(s), {model.noise_count} noise points")
members = [tuple(map(float, model.points[i])) for i in model.clusters[0].members]
print(f"the new cluster holds all three former noise points: {members}")
print("the cluster count grew without re-running the batch algorithm.")
