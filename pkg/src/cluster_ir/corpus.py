"""SMART-format collection parsing and the text normalization pipeline.

Collections such as CISI, CACM and NPL ship as a single file of records
delimited by ``.I <id>`` lines, with field markers like ``.T`` (title) and
``.W`` (body) at the start of a line.  Records are parsed into documents,
whose text is normalized by lowercasing alphanumeric tokenization,
stopword removal and Porter stemming.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path
from typing import Iterable, Iterator

from .porter import porter_stem

#: tokens are maximal runs of lowercase ASCII alphanumerics
_TOKEN_RE = re.compile(r"[a-z0-9]+")

#: field marker at the start of a line: ".I 12", ".T", ".W", ".X 4 5", ...
_MARKER_RE = re.compile(r"^\.([A-Z])(?:\s+(.*))?$")

#: markers whose content contributes tokens
_TITLE_MARKER = "T"
_BODY_MARKER = "W"

DEFAULT_MIN_TOKEN_LEN = 2


class ParseError(ValueError):
    """Raised for malformed collection, query, stoplist or qrels files."""


@dataclass
class Document:
    id: int
    title: str
    body: str
    tokens: list[str] = field(default_factory=list)

    @property
    def text(self) -> str:
        return f"{self.title}\n{self.body}" if self.title else self.body


@dataclass
class QueryDoc:
    id: int
    text: str
    tokens: list[str] = field(default_factory=list)


@dataclass(frozen=True)
class StopList:
    words: frozenset[str]
    source: str

    def __contains__(self, token: str) -> bool:
        return token in self.words

    def __len__(self) -> int:
        return len(self.words)


def load_stoplist(path: str | Path | None = None) -> StopList:
    """Load a stoplist file (one word per line, ``#`` comments allowed).

    With no path, the list shipped with the package is used.
    """
    if path is None:
        text = (
            resources.files("cluster_ir").joinpath("data/stopwords.txt").read_text("utf-8")
        )
        source = "builtin"
    else:
        text = Path(path).read_text(encoding="utf-8", errors="replace")
        source = str(path)
    words = set()
    for line in text.splitlines():
        word = line.split("#", 1)[0].strip().lower()
        if word:
            words.add(word)
    return StopList(words=frozenset(words), source=source)


def tokenize(
    text: str,
    *,
    min_len: int = DEFAULT_MIN_TOKEN_LEN,
    drop_numeric: bool = True,
) -> list[str]:
    """Lowercased alphanumeric runs, in order; short and pure-digit runs dropped."""
    out = []
    for tok in _TOKEN_RE.findall(text.lower()):
        if len(tok) < min_len:
            continue
        if drop_numeric and tok.isdigit():
            continue
        out.append(tok)
    return out


def remove_stopwords(tokens: Iterable[str], stoplist: StopList) -> list[str]:
    return [t for t in tokens if t not in stoplist]


def preprocess_text(
    text: str,
    stoplist: StopList,
    *,
    min_len: int = DEFAULT_MIN_TOKEN_LEN,
    drop_numeric: bool = True,
) -> list[str]:
    """Full pipeline: tokenize, remove stopwords, stem.

    Stems are passed through the stopword and length filters once more so
    that the output never contains a stoplist member or an undersized token,
    whatever the stemmer produced.
    """
    tokens = remove_stopwords(tokenize(text, min_len=min_len, drop_numeric=drop_numeric), stoplist)
    out = []
    for tok in tokens:
        stem = porter_stem(tok) if tok.isalpha() else tok
        if len(stem) >= min_len and stem not in stoplist:
            out.append(stem)
    return out


def _iter_records(path: str | Path) -> Iterator[tuple[int, dict[str, list[str]]]]:
    """Yield (doc id, field name -> content lines) per ``.I`` record."""
    current_id: int | None = None
    fields: dict[str, list[str]] = {}
    active: str | None = None
    seen: set[int] = set()

    with open(path, "r", encoding="utf-8", errors="replace") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.rstrip("\n")
            marker = _MARKER_RE.match(line)
            if marker and marker.group(1) == "I":
                if current_id is not None:
                    yield current_id, fields
                id_text = (marker.group(2) or "").strip()
                try:
                    doc_id = int(id_text)
                except ValueError:
                    raise ParseError(f"{path}:{lineno}: malformed .I line: {line!r}") from None
                if doc_id in seen:
                    raise ParseError(f"{path}:{lineno}: duplicate document id {doc_id}")
                seen.add(doc_id)
                current_id = doc_id
                fields = {}
                active = _BODY_MARKER  # untagged text after .I counts as body
                continue
            if current_id is None:
                if line.strip():
                    raise ParseError(f"{path}:{lineno}: content before first .I record")
                continue
            if marker:
                active = marker.group(1)
                if marker.group(2):
                    fields.setdefault(active, []).append(marker.group(2))
                continue
            fields.setdefault(active or _BODY_MARKER, []).append(line)
    if current_id is not None:
        yield current_id, fields


def parse_smart_docs(path: str | Path, stoplist: StopList | None = None) -> list[Document]:
    """Parse a SMART collection file into tokenized documents.

    Title and body both contribute tokens; author, date and cross-reference
    fields are ignored.
    """
    if stoplist is None:
        stoplist = load_stoplist()
    docs = []
    for doc_id, fields in _iter_records(path):
        title = "\n".join(fields.get(_TITLE_MARKER, [])).strip()
        body = "\n".join(fields.get(_BODY_MARKER, [])).strip()
        doc = Document(id=doc_id, title=title, body=body)
        doc.tokens = preprocess_text(doc.text, stoplist)
        docs.append(doc)
    return docs


def parse_smart_queries(path: str | Path, stoplist: StopList | None = None) -> list[QueryDoc]:
    """Parse a SMART query file; ``.W`` holds the query text."""
    if stoplist is None:
        stoplist = load_stoplist()
    queries = []
    for query_id, fields in _iter_records(path):
        text = "\n".join(fields.get(_BODY_MARKER, [])).strip()
        if not text:
            text = "\n".join(fields.get(_TITLE_MARKER, [])).strip()
        queries.append(QueryDoc(id=query_id, text=text, tokens=preprocess_text(text, stoplist)))
    return queries
