import random

import pytest

from cluster_ir import cos_distance, kmeans_cluster, select_relevant_clusters
from cluster_ir.kmeans import ClusterSet, clusterset_from_assignment, read_cluster_dump, write_cluster_dump
from cluster_ir.vsm import TermVector, cosine

from conftest import random_vectors


def separated_groups(group_size: int = 12) -> tuple[dict[int, TermVector], set[int], set[int]]:
    """Two vocabulary-disjoint groups of near-duplicates (within-group cosine
    > 0.99, cross-group exactly 0)."""
    vectors: dict[int, TermVector] = {}
    doc_id = 0
    groups = []
    for offset in (0, 10):
        ids = set()
        for i in range(group_size):
            doc_id += 1
            counts = [10.0] * 6
            counts[i % 6] = 11.0
            vectors[doc_id] = {offset + j: counts[j] for j in range(6)}
            ids.add(doc_id)
        groups.append(ids)
    return vectors, groups[0], groups[1]


class TestCosDistance:
    def test_identical(self):
        v = {0: 2.0, 1: 1.0}
        assert cos_distance(v, v) == pytest.approx(0.0, abs=1e-12)

    def test_orthogonal(self):
        assert cos_distance({0: 1.0}, {1: 1.0}) == 1.0

    def test_hand_value(self):
        assert cos_distance({0: 1.0, 1: 2.0}, {0: 2.0, 1: 1.0}) == pytest.approx(0.2, abs=1e-9)


class TestClustering:
    def test_k1_single_cluster_with_mean_centroid(self):
        rng = random.Random(0)
        vectors = random_vectors(rng, 15)
        cs = kmeans_cluster(vectors, k=1, seed=3)
        assert set(cs.assignment) == set(vectors)
        assert set(cs.assignment.values()) == {0}
        terms = {t for v in vectors.values() for t in v}
        for tid in terms:
            mean = sum(v.get(tid, 0.0) for v in vectors.values()) / len(vectors)
            assert cs.centroids[0].get(tid, 0.0) == pytest.approx(mean, abs=1e-9)

    def test_two_separated_groups_recovered(self):
        vectors, group_a, group_b = separated_groups()
        for seed in range(8):
            cs = kmeans_cluster(vectors, k=2, seed=seed)
            clusters = [
                {d for d, c in cs.assignment.items() if c == j} for j in range(2)
            ]
            assert {frozenset(group_a), frozenset(group_b)} == {
                frozenset(clusters[0]),
                frozenset(clusters[1]),
            }

    def test_k_equals_corpus_gives_discrete_partition(self):
        vectors = {i: {i: 1.0} for i in range(1, 9)}  # pairwise orthogonal
        cs = kmeans_cluster(vectors, k=8, seed=1)
        assert sorted(cs.sizes()) == [1] * 8

    def test_k_bounds(self):
        vectors = {1: {0: 1.0}, 2: {1: 1.0}}
        with pytest.raises(ValueError):
            kmeans_cluster(vectors, k=3)
        with pytest.raises(ValueError):
            kmeans_cluster(vectors, k=0)

    def test_partition_covers_all_docs_once(self):
        rng = random.Random(2)
        vectors = random_vectors(rng, 40)
        cs = kmeans_cluster(vectors, k=5, seed=9)
        assert sorted(cs.assignment) == sorted(vectors)
        assert sum(cs.sizes()) == len(vectors)
        assert all(size > 0 for size in cs.sizes())

    def test_objective_non_increasing(self):
        for trial in range(10):
            rng = random.Random(100 + trial)
            vectors = random_vectors(rng, 30)
            cs = kmeans_cluster(vectors, k=4, seed=trial)
            for earlier, later in zip(cs.objective_trace, cs.objective_trace[1:]):
                assert later <= earlier + 1e-9

    def test_reaches_fixed_point(self):
        rng = random.Random(4)
        vectors = random_vectors(rng, 25)
        cs = kmeans_cluster(vectors, k=3, seed=0, max_iter=500)
        assert cs.iterations_run < 500  # converged, not truncated

    def test_iteration_cap_respected(self):
        rng = random.Random(5)
        vectors = random_vectors(rng, 25)
        cs = kmeans_cluster(vectors, k=3, seed=0, max_iter=2)
        assert cs.iterations_run <= 2

    def test_seed_determinism(self):
        rng = random.Random(6)
        vectors = random_vectors(rng, 30)
        a = kmeans_cluster(vectors, k=4, seed=42)
        b = kmeans_cluster(vectors, k=4, seed=42)
        assert a.assignment == b.assignment
        assert a.centroids == b.centroids
        assert a.iterations_run == b.iterations_run

    def test_worker_count_does_not_change_result(self):
        rng = random.Random(7)
        vectors = random_vectors(rng, 30)
        solo = kmeans_cluster(vectors, k=4, seed=11, workers=1)
        pooled = kmeans_cluster(vectors, k=4, seed=11, workers=4)
        assert solo.assignment == pooled.assignment
        assert solo.centroids == pooled.centroids
        assert solo.objective_trace == pooled.objective_trace

    def test_assigned_centroid_is_nearest_at_termination(self):
        rng = random.Random(8)
        vectors = random_vectors(rng, 30)
        cs = kmeans_cluster(vectors, k=4, seed=2)
        for doc_id, assigned in cs.assignment.items():
            own = cos_distance(vectors[doc_id], cs.centroids[assigned])
            for j in range(cs.k):
                assert own <= cos_distance(vectors[doc_id], cs.centroids[j]) + 1e-12


class TestSelectRelevantClusters:
    def _cluster_set(self) -> ClusterSet:
        centroids = [{0: 9.0, 1: 1.0}, {2: 5.0}, {0: 1.0, 1: 1.0}]
        assignment = {1: 0, 2: 1, 3: 2}
        return ClusterSet(k=3, centroids=centroids, assignment=assignment, iterations_run=1)

    def test_m_equals_k_orders_all(self):
        cs = self._cluster_set()
        query = {0: 1.0}
        order = select_relevant_clusters(cs, query, m=3)
        sims = [cosine(cs.centroids[j], query) for j in order]
        assert sims == sorted(sims, reverse=True)
        assert set(order) == {0, 1, 2}

    def test_m_one_is_argmax(self):
        cs = self._cluster_set()
        assert select_relevant_clusters(cs, {0: 1.0}, m=1) == [0]

    def test_hand_ordering(self):
        # centroid-query cosines 0.9, 0.1, 0.5 -> top two are clusters 0 and 2
        cs = ClusterSet(
            k=3,
            centroids=[{0: 0.9, 1: 0.4358898943540673},
                       {0: 0.1, 1: 0.99498743710662},
                       {0: 0.5, 1: 0.8660254037844386}],
            assignment={1: 0, 2: 1, 3: 2},
            iterations_run=1,
        )
        assert select_relevant_clusters(cs, {0: 1.0}, m=2) == [0, 2]

    def test_m_out_of_range(self):
        cs = self._cluster_set()
        with pytest.raises(ValueError):
            select_relevant_clusters(cs, {0: 1.0}, m=0)
        with pytest.raises(ValueError):
            select_relevant_clusters(cs, {0: 1.0}, m=4)


class TestDump:
    def test_round_trip(self, tmp_path):
        rng = random.Random(9)
        vectors = random_vectors(rng, 20)
        cs = kmeans_cluster(vectors, k=3, seed=1)
        path = tmp_path / "clusters.tsv"
        write_cluster_dump(cs, path)
        assignment, k, iterations = read_cluster_dump(path)
        assert assignment == cs.assignment
        assert k == cs.k
        assert iterations == cs.iterations_run
        rebuilt = clusterset_from_assignment(assignment, vectors, k, iterations)
        assert rebuilt.centroids == cs.centroids  # same mean, same summation order

    def test_dump_layout(self, tmp_path):
        vectors = {1: {0: 1.0}, 2: {1: 1.0}}
        cs = kmeans_cluster(vectors, k=2, seed=0)
        path = tmp_path / "clusters.tsv"
        write_cluster_dump(cs, path)
        lines = path.read_text().splitlines()
        assert lines[0].split("\t") == ["1", str(cs.assignment[1])]
        assert any(line.startswith("# cluster 0 size ") for line in lines)
