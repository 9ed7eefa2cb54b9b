"""Count checks against the classic SMART collections, when present on disk.

These verify the parser against the published collection sizes; they skip
with instructions when the files are not available locally.
"""

import os
from pathlib import Path

import pytest

from cluster_ir import build_vocabulary, parse_smart_docs, parse_smart_queries


def _dataset_dir(*names: str) -> Path | None:
    candidates = []
    env = os.environ.get("CLUSTER_IR_DATA")
    if env:
        candidates.append(Path(env))
    here = Path(__file__).resolve().parent.parent
    candidates += [here / "data" / "cisi", here / "data" / "cacm", here / "data"]
    for base in candidates:
        if all((base / name).exists() for name in names):
            return base
    return None


def test_cisi_document_and_query_counts():
    base = _dataset_dir("CISI.ALL", "CISI.QRY")
    if base is None:
        pytest.skip("CISI files not present under ./data or $CLUSTER_IR_DATA")
    docs = parse_smart_docs(base / "CISI.ALL")
    assert len(docs) == 1460
    assert len({d.id for d in docs}) == 1460
    assert build_vocabulary(docs).corpus_size == 1460
    queries = parse_smart_queries(base / "CISI.QRY")
    assert len(queries) == 112


def test_cacm_document_count():
    base = _dataset_dir("cacm.all")
    if base is None:
        pytest.skip("CACM files not present under ./data or $CLUSTER_IR_DATA")
    docs = parse_smart_docs(base / "cacm.all")
    assert len(docs) == 3204
