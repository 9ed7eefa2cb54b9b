"""Relevance judgments, precision/recall metrics, baseline retrievers and
report output.

Rankings are scored with the classic 9-level interpolated precision table:
at each recall level 0.1..0.9 the precision is the maximum achieved at any
cutoff whose recall reaches the level (0 if it never does).  The F-measure
row applies 2RP/(R+P) to each (level, averaged precision) pair.

Two baselines are provided: exhaustive cosine ranking over the whole corpus
(classic IR) and the genetic engine run as one population over the whole
corpus with no clustering or migration (GA-IR).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Mapping

from .corpus import ParseError
from .hpga import GaConfig, RankedList, run_single_population
from .vsm import TermVector, cosine_given_norms, norm2

RECALL_LEVELS = (0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9)


@dataclass
class Qrels:
    judgments: dict[int, set[int]] = field(default_factory=dict)

    def relevant(self, query_id: int) -> set[int]:
        return self.judgments.get(query_id, set())


def load_qrels(path: str | Path) -> Qrels:
    """Whitespace-separated "query-id doc-id [extra columns ignored]" lines;
    duplicate pairs collapse into one judgment."""
    judgments: dict[int, set[int]] = {}
    with open(path, "r", encoding="utf-8", errors="replace") as fh:
        for lineno, line in enumerate(fh, start=1):
            parts = line.split()
            if not parts:
                continue
            if len(parts) < 2:
                raise ParseError(f"{path}:{lineno}: expected 'query-id doc-id'")
            try:
                query_id = int(parts[0])
                doc_id = int(parts[1])
            except ValueError:
                raise ParseError(f"{path}:{lineno}: non-integer id in {line.rstrip()!r}") from None
            if query_id <= 0 or doc_id <= 0:
                raise ParseError(f"{path}:{lineno}: ids must be positive")
            judgments.setdefault(query_id, set()).add(doc_id)
    return Qrels(judgments=judgments)


def recall_precision(
    ranked: RankedList, relevant: set[int], cutoff: int
) -> tuple[float, float]:
    """(recall, precision) over the top-cutoff entries."""
    if cutoff < 1:
        raise ValueError("cutoff must be >= 1")
    if not relevant:
        raise ValueError("cannot evaluate a query with an empty relevant set")
    hits = sum(1 for doc_id, _ in ranked.entries[:cutoff] if doc_id in relevant)
    return hits / len(relevant), hits / cutoff


@dataclass
class PrecisionRow:
    precision: list[float]
    avg: float

    levels: tuple[float, ...] = RECALL_LEVELS


def precision_row(values: list[float]) -> PrecisionRow:
    if len(values) != len(RECALL_LEVELS):
        raise ValueError(f"expected {len(RECALL_LEVELS)} values, got {len(values)}")
    return PrecisionRow(precision=list(values), avg=sum(values) / len(values))


def interpolated_precision_row(ranked: RankedList, relevant: set[int]) -> PrecisionRow:
    """Max precision at each recall level 0.1..0.9 over all cutoffs."""
    if not relevant:
        raise ValueError("cannot evaluate a query with an empty relevant set")
    n_relevant = len(relevant)
    hits = 0
    recalls: list[float] = []
    precisions: list[float] = []
    for cutoff, (doc_id, _) in enumerate(ranked.entries, start=1):
        if doc_id in relevant:
            hits += 1
        recalls.append(hits / n_relevant)
        precisions.append(hits / cutoff)

    # running max of precision over cutoff suffixes
    suffix_max = list(precisions)
    for i in range(len(suffix_max) - 2, -1, -1):
        if suffix_max[i + 1] > suffix_max[i]:
            suffix_max[i] = suffix_max[i + 1]

    values = []
    cursor = 0
    for level in RECALL_LEVELS:
        while cursor < len(recalls) and recalls[cursor] < level:
            cursor += 1
        values.append(suffix_max[cursor] if cursor < len(recalls) else 0.0)
    return precision_row(values)


def f_measure(recall: float, precision: float) -> float:
    """Harmonic mean 2RP/(R+P); 0 when both are 0."""
    if recall + precision == 0.0:
        return 0.0
    return 2.0 * recall * precision / (recall + precision)


def classic_ir_rank(
    query: TermVector, vectors: Mapping[int, TermVector], query_id: int | None = None
) -> RankedList:
    """Exhaustive cosine ranking of every indexed document; ties by ascending
    document id."""
    q_norm2 = norm2(query)
    scored = [
        (doc_id, cosine_given_norms(vectors[doc_id], query, norm2(vectors[doc_id]), q_norm2))
        for doc_id in sorted(vectors)
    ]
    scored.sort(key=lambda kv: (-kv[1], kv[0]))
    return RankedList(entries=scored, query_id=query_id)


def ga_ir_rank(
    query: TermVector,
    vectors: Mapping[int, TermVector],
    cfg: GaConfig,
    workers: int = 1,
    query_id: int | None = None,
    trace=None,
) -> RankedList:
    """Single-population genetic baseline over the whole corpus."""
    return run_single_population(
        vectors, query, cfg, workers=workers, query_id=query_id, trace=trace
    )


def improvement_row(ours: PrecisionRow, baseline: PrecisionRow) -> list[float]:
    """Per-level precision difference in percentage points, exact values."""
    if len(ours.precision) != len(baseline.precision):
        raise ValueError("rows have mismatched level counts")
    return [(a - b) * 100.0 for a, b in zip(ours.precision, baseline.precision)]


def improvement_avg(ours: PrecisionRow, baseline: PrecisionRow) -> float:
    diffs = [a - b for a, b in zip(ours.precision, baseline.precision)]
    return sum(diffs) / len(diffs) * 100.0


@dataclass
class EvalReport:
    label: str
    engine: str
    evaluated_queries: int
    skipped_queries: int
    per_query: dict[int, PrecisionRow]
    averaged: PrecisionRow
    f_measure_row: list[float]
    f_measure_avg: float


def evaluate_rankings(
    rankings: Mapping[int, RankedList], qrels: Qrels, label: str = "", engine: str = ""
) -> EvalReport:
    """Average the per-query interpolated precision rows; queries with no
    (or empty) relevance judgments are skipped and counted."""
    per_query: dict[int, PrecisionRow] = {}
    skipped = 0
    for query_id in sorted(rankings):
        relevant = qrels.relevant(query_id)
        if not relevant:
            skipped += 1
            continue
        per_query[query_id] = interpolated_precision_row(rankings[query_id], relevant)
    if not per_query:
        raise ValueError("no queries with relevance judgments to evaluate")
    averaged_values = [
        sum(row.precision[i] for row in per_query.values()) / len(per_query)
        for i in range(len(RECALL_LEVELS))
    ]
    averaged = precision_row(averaged_values)
    f_row = [f_measure(level, averaged.precision[i]) for i, level in enumerate(RECALL_LEVELS)]
    return EvalReport(
        label=label,
        engine=engine,
        evaluated_queries=len(per_query),
        skipped_queries=skipped,
        per_query=per_query,
        averaged=averaged,
        f_measure_row=f_row,
        f_measure_avg=sum(f_row) / len(f_row),
    )


# --- display formatting, matching the usual comparison-table layout:
# two decimals for precision cells, whole percentage points for improvement
# cells, four truncated decimals for averages, trailing zeros trimmed.

def _trim(text: str) -> str:
    if "." in text:
        text = text.rstrip("0").rstrip(".")
    return text or "0"


def fmt_score(value: float) -> str:
    return _trim(f"{value:.2f}")


def fmt_avg(value: float) -> str:
    scaled = round(value * 10000.0, 6)
    truncated = math.trunc(scaled) / 10000.0
    return _trim(f"{truncated:.4f}")


def fmt_improvement(value: float) -> str:
    return str(int(math.floor(value + 0.5)))


CSV_HEADER = "recall," + ",".join(_trim(f"{lv:.1f}") for lv in RECALL_LEVELS) + ",avg"


def _score_line(label: str, values: list[float], avg: float) -> str:
    return label + "," + ",".join(fmt_score(v) for v in values) + "," + fmt_avg(avg)


def write_eval_csv(
    report: EvalReport, path: str | Path, include_per_query: bool = False
) -> None:
    lines = [
        f"# queries evaluated,{report.evaluated_queries}",
        f"# queries skipped,{report.skipped_queries}",
        CSV_HEADER,
        _score_line("precision", report.averaged.precision, report.averaged.avg),
        _score_line("f_measure", report.f_measure_row, report.f_measure_avg),
    ]
    if include_per_query:
        for query_id in sorted(report.per_query):
            row = report.per_query[query_id]
            lines.append(_score_line(f"q{query_id}_precision", row.precision, row.avg))
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8", newline="\n")


def write_compare_csv(
    report_a: EvalReport, report_b: EvalReport, path: str | Path
) -> None:
    """Three rows in the comparison-table layout: both precision rows, then
    the per-level improvement of A over B in percentage points."""
    cells = improvement_row(report_a.averaged, report_b.averaged)
    avg = improvement_avg(report_a.averaged, report_b.averaged)
    lines = [
        CSV_HEADER,
        _score_line(f"{report_a.engine}_precision", report_a.averaged.precision, report_a.averaged.avg),
        _score_line(f"{report_b.engine}_precision", report_b.averaged.precision, report_b.averaged.avg),
        "improvement_pct,"
        + ",".join(fmt_improvement(c) for c in cells)
        + ","
        + fmt_avg(avg),
    ]
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8", newline="\n")
