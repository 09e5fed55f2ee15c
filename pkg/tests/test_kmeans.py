import json
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from incclust import kmeans
from incclust.dataset import Dataset, Metric
from tests.conftest import EXAMPLE_MEANS, EXAMPLE_POINTS, FAR_POINT, NEW_FAR_POINTS


def best_two_partition(X):
    """Independent oracle: exhaustively scan every 2-partition for the
    minimum total Euclidean distance to the part means."""
    n = len(X)
    best_cost, best_mask = math.inf, None
    for mask in range(1, 2 ** (n - 1)):  # fix point 0 in part A to kill mirror duplicates
        in_a = [(mask >> i) & 1 == 0 for i in range(n)]
        a = [X[i] for i in range(n) if in_a[i]]
        b = [X[i] for i in range(n) if not in_a[i]]
        if not a or not b:
            continue
        cost = 0.0
        for part in (a, b):
            mean = [sum(col) / len(part) for col in zip(*part)]
            cost += sum(math.dist(p, mean) for p in part)
        if cost < best_cost:
            best_cost, best_mask = cost, tuple(in_a)
    return best_mask


TWO_BLOBS = [
    (0.0, 0.1), (0.2, -0.1), (-0.1, 0.0), (0.1, 0.2), (0.0, -0.2), (-0.2, 0.1),
    (10.0, 10.1), (10.2, 9.9), (9.9, 10.0), (10.1, 10.2), (10.0, 9.8), (9.8, 10.1),
]


class TestAssign:
    def test_golden_nearest_mean(self):
        m = kmeans.KMeansModel(EXAMPLE_MEANS, Metric.MANHATTAN)
        assert m.assign((9, 15)) == (1, 11.0)

    def test_point_on_centroid(self):
        m = kmeans.KMeansModel(EXAMPLE_MEANS, Metric.MANHATTAN)
        assert m.assign((4, 6)) == (0, 0.0)

    def test_tie_breaks_to_lowest_index(self):
        m = kmeans.KMeansModel([(0, 0), (50, 50), (2, 2)], Metric.MANHATTAN)
        cluster, dist = m.assign((1, 1))
        assert (cluster, dist) == (0, 2.0)

    def test_dimension_mismatch(self):
        m = kmeans.KMeansModel(EXAMPLE_MEANS, Metric.MANHATTAN)
        with pytest.raises(ValueError, match="dimension mismatch"):
            m.assign((1, 2, 3))

    def test_assign_is_pure(self):
        m = kmeans.KMeansModel(EXAMPLE_MEANS, Metric.MANHATTAN)
        m.assign((9, 15))
        assert m.total_inserted == 0
        assert np.array_equal(m.centroids, np.array(EXAMPLE_MEANS, dtype=float))


class TestFit:
    def test_first_pass_places_point_with_seeded_means(self):
        pts = [p for p in EXAMPLE_POINTS if p != FAR_POINT]
        data = Dataset(pts)
        model = kmeans.fit(
            data, 3, Metric.MANHATTAN, max_iter=1, initial_centroids=EXAMPLE_MEANS
        )
        assert pts.index((9, 15)) in model.members[1]

    def test_k_equals_n_gives_singletons(self):
        data = Dataset(TWO_BLOBS)
        model = kmeans.fit(data, len(TWO_BLOBS), Metric.EUCLIDEAN, init_seed=3)
        assert sorted(len(g) for g in model.members) == [1] * len(TWO_BLOBS)
        for j, group in enumerate(model.members):
            assert np.array_equal(model.centroids[j], data.points[group[0]])

    def test_two_blobs_match_bruteforce_partition(self):
        data = Dataset(TWO_BLOBS)
        model = kmeans.fit(data, 2, Metric.EUCLIDEAN, init_seed=0)
        oracle_mask = best_two_partition(TWO_BLOBS)
        got = [frozenset(g) for g in model.members]
        want_a = frozenset(i for i, flag in enumerate(oracle_mask) if flag)
        want_b = frozenset(i for i, flag in enumerate(oracle_mask) if not flag)
        assert set(got) == {want_a, want_b}

    def test_centroids_are_member_means(self):
        rng = np.random.default_rng(5)
        data = Dataset(rng.uniform(-5, 5, (40, 3)))
        for metric in Metric:
            model = kmeans.fit(data, 4, metric, init_seed=11)
            for j in range(model.k):
                if model.members[j]:
                    np.testing.assert_allclose(
                        model.centroids[j], model.recomputed_centroid(j), atol=1e-9
                    )

    def test_errors(self):
        data = Dataset([[1, 2], [3, 4]])
        with pytest.raises(ValueError, match="empty"):
            kmeans.fit(Dataset([], dim=2), 1, Metric.MANHATTAN)
        with pytest.raises(ValueError, match="k must be at least 1"):
            kmeans.fit(data, 0, Metric.MANHATTAN)
        with pytest.raises(ValueError, match="exceeds"):
            kmeans.fit(data, 3, Metric.MANHATTAN)

    def test_objective_history_non_increasing_euclidean(self):
        # Lloyd descends the sum of squared distances when assignment and
        # update share the Euclidean geometry; 100 seeded instances.
        rng = np.random.default_rng(123)
        for _ in range(100):
            n = int(rng.integers(8, 60))
            dim = int(rng.integers(1, 5))
            k = int(rng.integers(1, min(6, n) + 1))
            data = Dataset(rng.uniform(-10, 10, (n, dim)))
            model = kmeans.fit(data, k, Metric.EUCLIDEAN, init_seed=int(rng.integers(0, 2**31)))
            h = model.objective_history
            assert len(h) >= 1
            for a, b in zip(h, h[1:]):
                assert b <= a + 1e-9 * max(1.0, a)

    def test_deterministic_for_fixed_seed(self):
        rng = np.random.default_rng(2)
        data = Dataset(rng.uniform(0, 1, (30, 2)))
        m1 = kmeans.fit(data, 3, Metric.MANHATTAN, init_seed=7)
        m2 = kmeans.fit(data, 3, Metric.MANHATTAN, init_seed=7)
        assert np.array_equal(m1.centroids, m2.centroids)
        assert m1.members == m2.members


class TestInsert:
    def test_far_points_rejected_with_radius(self):
        m = kmeans.KMeansModel(EXAMPLE_MEANS, Metric.MANHATTAN, outlier_radius=50)
        outcomes = m.insert(NEW_FAR_POINTS)
        assert [o.is_outlier for o in outcomes] == [True, True]
        assert [o.distance for o in outcomes] == [254.0, 211.0]
        assert len(m.outliers) == 2
        assert all(not g for g in m.members)

    def test_no_radius_accepts_everything(self):
        m = kmeans.KMeansModel(EXAMPLE_MEANS, Metric.MANHATTAN)
        outcomes = m.insert([(155, 112)])
        assert outcomes[0].cluster == 1
        assert m.outliers == []

    def test_running_mean_two_points(self):
        m = kmeans.KMeansModel([(4, 6)], Metric.MANHATTAN)
        m.insert([(4, 6)])
        m.insert([(6, 8)])
        assert m.centroids[0].tolist() == [5.0, 7.0]

    def test_centroids_frozen_when_disabled(self):
        m = kmeans.KMeansModel(EXAMPLE_MEANS, Metric.MANHATTAN)
        m.insert([(9, 15), (1, 1)], update_centroids=False)
        assert np.array_equal(m.centroids, np.array(EXAMPLE_MEANS, dtype=float))

    def test_dimension_mismatch_rejects_whole_batch(self):
        m = kmeans.KMeansModel(EXAMPLE_MEANS, Metric.MANHATTAN)
        with pytest.raises(ValueError, match="dimension mismatch"):
            m.insert([(1, 2), (1, 2, 3)])
        assert m.total_inserted == 0

    def test_outcome_partition(self):
        m = kmeans.KMeansModel(EXAMPLE_MEANS, Metric.MANHATTAN, outlier_radius=50)
        rng = np.random.default_rng(0)
        m.insert(rng.uniform(-100, 200, (40, 2)))
        assert sum(len(g) for g in m.members) + len(m.outliers) == m.total_inserted == 40

    def test_cluster_count_never_changes(self):
        m = kmeans.KMeansModel(EXAMPLE_MEANS, Metric.MANHATTAN, outlier_radius=50)
        m.insert([(0, 0), (500, 500), (4, 7)])
        assert m.k == 3 and len(m.members) == 3


small_models = st.builds(
    lambda centroids, metric: kmeans.KMeansModel(centroids, metric),
    st.lists(
        st.tuples(st.integers(-50, 50), st.integers(-50, 50)), min_size=1, max_size=5, unique=True
    ),
    st.sampled_from(list(Metric)),
)
small_points = st.lists(
    st.tuples(st.integers(-60, 60), st.integers(-60, 60)), min_size=0, max_size=12
)


class TestInsertProperties:
    @given(small_models, small_points)
    def test_pure_assignment_equivalence(self, model, pts):
        # No radius, frozen centroids: insertion must match fresh assign()
        # calls point for point.
        expected = [model.assign(p) for p in pts]
        outcomes = model.insert(pts, update_centroids=False)
        assert [(o.cluster, o.distance) for o in outcomes] == expected

    @given(small_models, small_points)
    @settings(max_examples=60)
    def test_running_mean_invariant(self, model, pts):
        model.insert(pts, update_centroids=True)
        for j in range(model.k):
            if model.members[j]:
                np.testing.assert_allclose(
                    model.centroids[j], model.recomputed_centroid(j), atol=1e-9
                )

    @given(small_models, small_points)
    @settings(max_examples=60)
    def test_partition_invariant(self, model, pts):
        model.outlier_radius = 25.0
        model.insert(pts)
        in_clusters = [i for g in model.members for i in g]
        assert sorted(in_clusters + model.outlier_indices) == list(range(model.total_inserted))


class TestSerialization:
    def test_round_trip_through_json_text(self):
        m = kmeans.KMeansModel(EXAMPLE_MEANS, Metric.MANHATTAN, outlier_radius=50)
        m.insert([(9, 15), (155, 112), (4, 7)])
        doc = json.loads(json.dumps(m.to_json()))
        back = kmeans.KMeansModel.from_json(doc)
        assert np.array_equal(back.centroids, m.centroids)
        assert back.members == m.members
        assert back.outlier_indices == m.outlier_indices
        assert back.metric is m.metric
        assert back.outlier_radius == m.outlier_radius
        assert back.assign((9, 15)) == m.assign((9, 15))

    def test_rejects_foreign_documents(self):
        with pytest.raises(ValueError, match="format"):
            kmeans.KMeansModel.from_json({"format": "something-else", "version": 1})
        good = kmeans.KMeansModel(EXAMPLE_MEANS, Metric.MANHATTAN).to_json()
        good["version"] = 99
        with pytest.raises(ValueError, match="version"):
            kmeans.KMeansModel.from_json(good)

    def test_rejects_member_list_arity_mismatch(self):
        doc = kmeans.KMeansModel(EXAMPLE_MEANS, Metric.MANHATTAN).to_json()
        doc["members"] = doc["members"][:-1]
        with pytest.raises(ValueError, match="member lists"):
            kmeans.KMeansModel.from_json(doc)

    def test_copy_is_independent(self):
        m = kmeans.KMeansModel(EXAMPLE_MEANS, Metric.MANHATTAN)
        m.insert([(9, 15)])
        c = m.copy()
        c.insert([(0, 0)])
        assert m.total_inserted == 1 and c.total_inserted == 2
