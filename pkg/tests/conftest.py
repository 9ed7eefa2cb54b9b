"""Shared builders and independent oracles used across the suite."""

from __future__ import annotations

import math
import random

import pytest

from cluster_ir import Document, load_stoplist
from cluster_ir.vsm import TermVector


@pytest.fixture(scope="session")
def stoplist():
    return load_stoplist()


def make_doc(doc_id: int, tokens: list[str]) -> Document:
    return Document(id=doc_id, title="", body=" ".join(tokens), tokens=list(tokens))


def random_vectors(
    rng: random.Random, n_docs: int, vocab_size: int = 30, max_terms: int = 8
) -> dict[int, TermVector]:
    """Sparse non-negative vectors with sorted term ids, one per doc id."""
    vectors: dict[int, TermVector] = {}
    for doc_id in range(1, n_docs + 1):
        n_terms = rng.randint(1, max_terms)
        tids = sorted(rng.sample(range(vocab_size), n_terms))
        vectors[doc_id] = {tid: rng.randint(1, 9) * 0.5 for tid in tids}
    return vectors


def random_query(rng: random.Random, vocab_size: int = 30, max_terms: int = 5) -> TermVector:
    n_terms = rng.randint(1, max_terms)
    tids = sorted(rng.sample(range(vocab_size), n_terms))
    return {tid: rng.randint(1, 9) * 0.5 for tid in tids}


def dense_cosine_rank(
    query: TermVector, vectors: dict[int, TermVector], dim: int
) -> list[tuple[int, float]]:
    """Brute-force dense-array cosine ranking, written independently of the
    sparse implementation; ties break to the ascending doc id."""
    dense_q = [0.0] * dim
    for tid, weight in query.items():
        dense_q[tid] = weight
    q_norm2 = 0.0
    for value in dense_q:
        q_norm2 += value * value

    scored = []
    for doc_id in sorted(vectors):
        dense_d = [0.0] * dim
        for tid, weight in vectors[doc_id].items():
            dense_d[tid] = weight
        d_norm2 = 0.0
        dot = 0.0
        for i in range(dim):
            d_norm2 += dense_d[i] * dense_d[i]
            dot += dense_d[i] * dense_q[i]
        if d_norm2 == 0.0 or q_norm2 == 0.0 or dot == 0.0:
            score = 0.0
        else:
            score = dot / (math.sqrt(d_norm2) * math.sqrt(q_norm2))
            if score >= 1.0:
                score = 1.0
        scored.append((doc_id, score))
    scored.sort(key=lambda kv: (-kv[1], kv[0]))
    return scored
