"""TF-IDF vector space model: vocabulary, sparse vectors, cosine similarity.

Weights are ``tf * log10(|D| / df)``; the logarithm base is fixed at 10 so
documented example values are unambiguous.  Terms occurring in every
document have weight exactly zero and are never stored, keeping vectors
sparse and weights strictly positive.

Term vectors are plain ``{term_id: weight}`` dicts whose keys are inserted
in ascending term-id order; cosine then accumulates the sparse intersection
in the same order as a dense ascending scan, which makes results bit-equal
to a dense brute-force evaluation.
"""

from __future__ import annotations

import math
import struct
from collections import Counter
from dataclasses import dataclass
from pathlib import Path
from typing import Mapping

from .corpus import Document, QueryDoc

TermVector = dict[int, float]

INDEX_MAGIC = b"CIRX"
INDEX_VERSION = 1


@dataclass
class Vocabulary:
    term_to_id: dict[str, int]
    doc_freq: list[int]
    corpus_size: int

    def __len__(self) -> int:
        return len(self.term_to_id)

    def __contains__(self, term: str) -> bool:
        return term in self.term_to_id


def build_vocabulary(docs: list[Document]) -> Vocabulary:
    """Assign dense term ids (first-appearance order) and count document frequencies."""
    if not docs:
        raise ValueError("cannot build a vocabulary from an empty corpus")
    term_to_id: dict[str, int] = {}
    doc_freq: list[int] = []
    for doc in docs:
        # first-appearance order, not set order: term ids must not depend on
        # the per-process string hash seed
        for term in dict.fromkeys(doc.tokens):
            tid = term_to_id.get(term)
            if tid is None:
                term_to_id[term] = len(doc_freq)
                doc_freq.append(1)
            else:
                doc_freq[tid] += 1
    return Vocabulary(term_to_id=term_to_id, doc_freq=doc_freq, corpus_size=len(docs))


def tf(doc: Document, term: str) -> int:
    """Occurrence count of a term in the document's token stream."""
    return doc.tokens.count(term)


def idf(vocab: Vocabulary, term: str) -> float:
    """log10(|D| / df); raises for unknown terms, callers skip those up front."""
    tid = vocab.term_to_id.get(term)
    if tid is None:
        raise ValueError(f"term {term!r} not in vocabulary")
    return math.log10(vocab.corpus_size / vocab.doc_freq[tid])


def _weigh(counts: Counter[str], vocab: Vocabulary) -> TermVector:
    entries: list[tuple[int, float]] = []
    for term, count in counts.items():
        tid = vocab.term_to_id.get(term)
        if tid is None:
            continue
        df = vocab.doc_freq[tid]
        if df == vocab.corpus_size:
            continue  # idf == 0, weight would be stored as zero
        entries.append((tid, count * math.log10(vocab.corpus_size / df)))
    entries.sort()
    return dict(entries)


def tfidf_vector(doc: Document, vocab: Vocabulary) -> TermVector:
    return _weigh(Counter(doc.tokens), vocab)


def query_vector(query: QueryDoc, vocab: Vocabulary) -> TermVector:
    """Same weighting as documents; out-of-vocabulary terms are dropped."""
    return _weigh(Counter(query.tokens), vocab)


def norm2(vec: Mapping[int, float]) -> float:
    total = 0.0
    for w in vec.values():
        total += w * w
    return total


def cosine(p: Mapping[int, float], q: Mapping[int, float]) -> float:
    """Cosine similarity over the sparse intersection; zero-norm inputs give 0."""
    return cosine_given_norms(p, q, norm2(p), norm2(q))


def cosine_given_norms(
    p: Mapping[int, float], q: Mapping[int, float], p_norm2: float, q_norm2: float
) -> float:
    if p_norm2 == 0.0 or q_norm2 == 0.0:
        return 0.0
    if len(q) < len(p):
        p, q = q, p
    dot = 0.0
    for tid, w in p.items():
        other = q.get(tid)
        if other is not None:
            dot += w * other
    if dot == 0.0:
        return 0.0
    value = dot / (math.sqrt(p_norm2) * math.sqrt(q_norm2))
    # sqrt rounding can push self-similarity a few ulp past 1; keep the range
    return value if value < 1.0 else 1.0


def save_index(path: str | Path, vocab: Vocabulary, vectors: Mapping[int, TermVector]) -> None:
    """Persist vocabulary and document vectors; weights as 64-bit floats.

    Writing is fully deterministic (terms by id, documents and entries by
    ascending id), so identical inputs produce identical bytes.
    """
    id_to_term = sorted(vocab.term_to_id.items(), key=lambda kv: kv[1])
    with open(path, "wb") as fh:
        fh.write(INDEX_MAGIC)
        fh.write(struct.pack("<HII", INDEX_VERSION, vocab.corpus_size, len(id_to_term)))
        for term, tid in id_to_term:
            raw = term.encode("utf-8")
            fh.write(struct.pack("<HI", len(raw), vocab.doc_freq[tid]))
            fh.write(raw)
        fh.write(struct.pack("<I", len(vectors)))
        for doc_id in sorted(vectors):
            entries = sorted(vectors[doc_id].items())
            fh.write(struct.pack("<II", doc_id, len(entries)))
            for tid, weight in entries:
                fh.write(struct.pack("<Id", tid, weight))


def load_index(path: str | Path) -> tuple[Vocabulary, dict[int, TermVector]]:
    with open(path, "rb") as fh:
        data = fh.read()
    if data[:4] != INDEX_MAGIC:
        raise ValueError(f"{path}: not an index file")
    offset = 4
    version, corpus_size, vocab_size = struct.unpack_from("<HII", data, offset)
    offset += struct.calcsize("<HII")
    if version != INDEX_VERSION:
        raise ValueError(f"{path}: unsupported index version {version}")
    term_to_id: dict[str, int] = {}
    doc_freq: list[int] = []
    for tid in range(vocab_size):
        raw_len, df = struct.unpack_from("<HI", data, offset)
        offset += struct.calcsize("<HI")
        term = data[offset : offset + raw_len].decode("utf-8")
        offset += raw_len
        term_to_id[term] = tid
        doc_freq.append(df)
    (n_docs,) = struct.unpack_from("<I", data, offset)
    offset += 4
    vectors: dict[int, TermVector] = {}
    for _ in range(n_docs):
        doc_id, n_entries = struct.unpack_from("<II", data, offset)
        offset += 8
        vec: TermVector = {}
        for _ in range(n_entries):
            tid, weight = struct.unpack_from("<Id", data, offset)
            offset += struct.calcsize("<Id")
            vec[tid] = weight
        vectors[doc_id] = vec
    return Vocabulary(term_to_id=term_to_id, doc_freq=doc_freq, corpus_size=corpus_size), vectors
