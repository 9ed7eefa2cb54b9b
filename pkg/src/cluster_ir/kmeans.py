"""K-means partitioning of document vectors under cosine distance.

Iterates assignment (each document to its nearest centroid) and centroid
update (per-term arithmetic mean of members, no renormalization) until the
assignment stops changing or ``max_iter`` is hit.  Initial centroids are k
distinct documents sampled with the given seed; a cluster that empties
during assignment is reseeded with the document farthest from its current
centroid, so no cluster is ever empty.

All tie-breaks (nearest centroid, farthest document, cluster ordering) go
to the lowest index or id, making results fully deterministic for a fixed
seed and identical for any worker count.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from pathlib import Path
from typing import Mapping, Sequence

from ._parallel import chunked, pmap
from .vsm import TermVector, cosine, cosine_given_norms, norm2


def cos_distance(p: Mapping[int, float], q: Mapping[int, float]) -> float:
    return 1.0 - cosine(p, q)


@dataclass
class ClusterSet:
    k: int
    centroids: list[TermVector]
    assignment: dict[int, int]
    iterations_run: int
    objective_trace: list[float] = field(default_factory=list)

    def members(self, cluster: int) -> list[int]:
        return sorted(d for d, c in self.assignment.items() if c == cluster)

    def sizes(self) -> list[int]:
        counts = [0] * self.k
        for c in self.assignment.values():
            counts[c] += 1
        return counts


def _mean_vector(member_ids: Sequence[int], vectors: Mapping[int, TermVector]) -> TermVector:
    sums: dict[int, float] = {}
    for doc_id in member_ids:
        for tid, w in vectors[doc_id].items():
            sums[tid] = sums.get(tid, 0.0) + w
    n = len(member_ids)
    return {tid: sums[tid] / n for tid in sorted(sums)}


def kmeans_cluster(
    vectors: Mapping[int, TermVector],
    k: int,
    seed: int = 0,
    max_iter: int = 100,
    workers: int = 1,
) -> ClusterSet:
    if k <= 0:
        raise ValueError(f"k must be positive, got {k}")
    if k > len(vectors):
        raise ValueError(f"k={k} exceeds corpus size {len(vectors)}")
    if max_iter < 1:
        raise ValueError("max_iter must be >= 1")

    doc_ids = sorted(vectors)
    doc_norms = {d: norm2(vectors[d]) for d in doc_ids}
    rng = random.Random(seed)
    centroids = [dict(vectors[d]) for d in rng.sample(doc_ids, k)]

    assignment: dict[int, int] = {}
    trace: list[float] = []
    iterations = 0
    for _ in range(max_iter):
        iterations += 1
        centroid_norms = [norm2(c) for c in centroids]

        def nearest(doc_id: int) -> tuple[int, int, float]:
            vec = vectors[doc_id]
            vnorm = doc_norms[doc_id]
            best_j = 0
            best_d = 2.0
            for j in range(k):
                d = 1.0 - cosine_given_norms(vec, centroids[j], vnorm, centroid_norms[j])
                if d < best_d:
                    best_d = d
                    best_j = j
            return doc_id, best_j, best_d

        def nearest_many(ids: Sequence[int]) -> list[tuple[int, int, float]]:
            return [nearest(d) for d in ids]

        results: list[tuple[int, int, float]] = []
        for part in pmap(nearest_many, chunked(doc_ids, workers), workers):
            results.extend(part)
        new_assignment = {doc_id: j for doc_id, j, _ in results}
        distances = {doc_id: d for doc_id, _, d in results}

        # reseed empty clusters with the farthest document whose source
        # cluster keeps at least one member
        sizes = [0] * k
        for j in new_assignment.values():
            sizes[j] += 1
        for j in range(k):
            if sizes[j] > 0:
                continue
            far_doc = None
            far_dist = -1.0
            for doc_id in doc_ids:
                if sizes[new_assignment[doc_id]] < 2:
                    continue
                d = cos_distance(vectors[doc_id], centroids[j])
                if d > far_dist:
                    far_dist = d
                    far_doc = doc_id
            assert far_doc is not None
            sizes[new_assignment[far_doc]] -= 1
            sizes[j] += 1
            new_assignment[far_doc] = j
            centroids[j] = dict(vectors[far_doc])
            distances[far_doc] = 0.0

        trace.append(sum(distances[d] for d in doc_ids))
        changed = new_assignment != assignment
        assignment = new_assignment

        members: list[list[int]] = [[] for _ in range(k)]
        for doc_id in doc_ids:
            members[assignment[doc_id]].append(doc_id)
        centroids = [_mean_vector(m, vectors) for m in members]

        if not changed:
            break

    return ClusterSet(
        k=k,
        centroids=centroids,
        assignment=assignment,
        iterations_run=iterations,
        objective_trace=trace,
    )


def select_relevant_clusters(cs: ClusterSet, query: Mapping[int, float], m: int) -> list[int]:
    """Indices of the m clusters whose centroids are most cosine-similar to
    the query, most similar first; ties go to the lower cluster index."""
    if not 1 <= m <= cs.k:
        raise ValueError(f"m must be in [1, {cs.k}], got {m}")
    ranked = sorted(range(cs.k), key=lambda j: (-cosine(cs.centroids[j], query), j))
    return ranked[:m]


def write_cluster_dump(cs: ClusterSet, path: str | Path) -> None:
    """Text dump: one "doc-id<TAB>cluster" line per document, then per-cluster
    size summaries as comments; round-trips through read_cluster_dump."""
    sizes = cs.sizes()
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        for doc_id in sorted(cs.assignment):
            fh.write(f"{doc_id}\t{cs.assignment[doc_id]}\n")
        for j, size in enumerate(sizes):
            fh.write(f"# cluster {j} size {size}\n")
        fh.write(f"# iterations {cs.iterations_run}\n")


def read_cluster_dump(path: str | Path) -> tuple[dict[int, int], int, int]:
    """Returns (assignment, k, iterations_run)."""
    assignment: dict[int, int] = {}
    k = 0
    iterations = 0
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.rstrip("\n")
            if not line.strip():
                continue
            if line.startswith("#"):
                parts = line.split()
                if parts[:2] == ["#", "cluster"]:
                    k = max(k, int(parts[2]) + 1)
                elif parts[:2] == ["#", "iterations"]:
                    iterations = int(parts[2])
                continue
            try:
                doc_text, cluster_text = line.split("\t")
                assignment[int(doc_text)] = int(cluster_text)
            except ValueError:
                raise ValueError(f"{path}:{lineno}: malformed cluster dump line: {line!r}") from None
    if k == 0 and assignment:
        k = max(assignment.values()) + 1
    return assignment, k, iterations


def clusterset_from_assignment(
    assignment: dict[int, int],
    vectors: Mapping[int, TermVector],
    k: int,
    iterations_run: int = 0,
) -> ClusterSet:
    """Rebuild a ClusterSet from a persisted assignment; centroids are
    recomputed as member means, matching the state at clustering termination."""
    members: list[list[int]] = [[] for _ in range(k)]
    for doc_id in sorted(assignment):
        members[assignment[doc_id]].append(doc_id)
    if any(not m for m in members):
        raise ValueError("cluster dump contains an empty cluster")
    centroids = [_mean_vector(m, vectors) for m in members]
    return ClusterSet(k=k, centroids=centroids, assignment=dict(assignment), iterations_run=iterations_run)
