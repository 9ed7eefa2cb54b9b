"""Synthetic SMART-format corpora for tests, demos and CI.

Three kinds:

* ``perfect``   - every query's relevant documents are exact textual
                  duplicates of the query, so an ideal retriever scores
                  precision 1.0 at every recall level.
* ``disjoint``  - queries share no vocabulary with the corpus and the
                  judged ids do not exist, so every metric is zero.
* ``separated`` - two vocabulary-disjoint groups of near-duplicate
                  documents; the natural 2-clustering is unambiguous.

Generated tokens carry digits (e.g. ``q1w3x``) so they pass the tokenizer
unchanged, dodge the stemmer and can never collide with a stopword.
"""

from __future__ import annotations

from pathlib import Path


def _record(doc_id: int, title: str, body: str) -> str:
    lines = [f".I {doc_id}"]
    if title:
        lines.append(".T")
        lines.append(title)
    lines.append(".W")
    lines.append(body)
    return "\n".join(lines)


def _query_record(query_id: int, text: str) -> str:
    return f".I {query_id}\n.W\n{text}"


def make_perfect_collection(
    n_queries: int = 4, dups_per_query: int = 4, n_noise: int = 30
) -> tuple[str, str, str]:
    """Returns (docs text, queries text, qrels text)."""
    docs = []
    queries = []
    qrels = []
    doc_id = 0
    for qi in range(1, n_queries + 1):
        words = [f"q{qi}w{j}x" for j in range(5)]
        text = " ".join(words)
        queries.append(_query_record(qi, text))
        for _ in range(dups_per_query):
            doc_id += 1
            docs.append(_record(doc_id, "", text))
            qrels.append(f"{qi} {doc_id}")
    for ni in range(1, n_noise + 1):
        doc_id += 1
        body = " ".join(f"n{ni}w{j}x" for j in range(6))
        docs.append(_record(doc_id, "", body))
    return "\n".join(docs) + "\n", "\n".join(queries) + "\n", "\n".join(qrels) + "\n"


def make_disjoint_collection(
    n_queries: int = 3, n_docs: int = 25
) -> tuple[str, str, str]:
    docs = []
    for doc_id in range(1, n_docs + 1):
        body = " ".join(f"d{doc_id}w{j}x" for j in range(5))
        docs.append(_record(doc_id, "", body))
    queries = []
    qrels = []
    for qi in range(1, n_queries + 1):
        queries.append(_query_record(qi, " ".join(f"q{qi}w{j}x" for j in range(5))))
        # judged ids deliberately outside the corpus: nothing relevant is retrievable
        qrels.append(f"{qi} {100000 + qi}")
    return "\n".join(docs) + "\n", "\n".join(queries) + "\n", "\n".join(qrels) + "\n"


def make_separated_collection(group_size: int = 15) -> tuple[str, str, str]:
    """Two groups of near-duplicates: every document repeats its theme words
    ten times except one word repeated eleven, so within-group cosine
    exceeds 0.99 while cross-group cosine is exactly 0."""
    themes = [[f"a{j}x" for j in range(6)], [f"b{j}x" for j in range(6)]]
    docs = []
    qrels = []
    doc_id = 0
    for theme_idx, theme in enumerate(themes):
        for i in range(group_size):
            doc_id += 1
            counts = [10] * len(theme)
            counts[i % len(theme)] = 11
            body = " ".join(
                " ".join([word] * count) for word, count in zip(theme, counts)
            )
            docs.append(_record(doc_id, "", body))
            qrels.append(f"{theme_idx + 1} {doc_id}")
    queries = [
        _query_record(theme_idx + 1, " ".join(theme))
        for theme_idx, theme in enumerate(themes)
    ]
    return "\n".join(docs) + "\n", "\n".join(queries) + "\n", "\n".join(qrels) + "\n"


def write_fixture(kind: str, out_dir: str | Path, **sizes: int) -> dict[str, Path]:
    makers = {
        "perfect": make_perfect_collection,
        "disjoint": make_disjoint_collection,
        "separated": make_separated_collection,
    }
    if kind not in makers:
        raise ValueError(f"unknown fixture kind {kind!r}; choose from {sorted(makers)}")
    docs_text, queries_text, qrels_text = makers[kind](**sizes)
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    paths = {
        "docs": out / "docs.txt",
        "queries": out / "queries.txt",
        "qrels": out / "qrels.txt",
    }
    paths["docs"].write_text(docs_text, encoding="utf-8", newline="\n")
    paths["queries"].write_text(queries_text, encoding="utf-8", newline="\n")
    paths["qrels"].write_text(qrels_text, encoding="utf-8", newline="\n")
    return paths
