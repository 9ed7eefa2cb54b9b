"""Figure rendering for evaluation reports, written next to the CSV output.

Uses the Agg backend and strips version metadata from the PNG so repeated
runs over identical inputs produce identical bytes.
"""

from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402  (backend must be set first)

from .evalkit import EvalReport, improvement_row  # noqa: E402

_PNG_METADATA = {"Software": None}


def render_eval_figure(report: EvalReport, path: str | Path) -> None:
    fig, ax = plt.subplots(figsize=(6.4, 4.2), dpi=120)
    levels = list(report.averaged.levels)
    ax.plot(levels, report.averaged.precision, marker="o", label="precision")
    ax.plot(levels, report.f_measure_row, marker="s", label="f-measure")
    ax.set_xlabel("recall level")
    ax.set_ylabel("score")
    ax.set_ylim(0.0, 1.05)
    ax.set_xticks(levels)
    ax.grid(alpha=0.3)
    ax.legend()
    ax.set_title(
        f"{report.engine}: interpolated precision over {report.evaluated_queries} queries"
    )
    fig.savefig(path, bbox_inches="tight", metadata=_PNG_METADATA)
    plt.close(fig)


def render_compare_figure(
    report_a: EvalReport, report_b: EvalReport, path: str | Path
) -> None:
    fig, (top, bottom) = plt.subplots(
        2, 1, figsize=(6.4, 6.0), dpi=120, sharex=True,
        gridspec_kw={"height_ratios": [2, 1]},
    )
    levels = list(report_a.averaged.levels)
    top.plot(levels, report_a.averaged.precision, marker="o", label=report_a.engine)
    top.plot(levels, report_b.averaged.precision, marker="s", label=report_b.engine)
    top.set_ylabel("precision")
    top.set_ylim(0.0, 1.05)
    top.grid(alpha=0.3)
    top.legend()
    top.set_title(f"{report_a.engine} vs {report_b.engine}")

    cells = improvement_row(report_a.averaged, report_b.averaged)
    bottom.bar(levels, cells, width=0.06)
    bottom.axhline(0.0, color="black", linewidth=0.8)
    bottom.set_xlabel("recall level")
    bottom.set_ylabel("improvement (pp)")
    bottom.set_xticks(levels)
    bottom.grid(alpha=0.3)

    fig.savefig(path, bbox_inches="tight", metadata=_PNG_METADATA)
    plt.close(fig)
