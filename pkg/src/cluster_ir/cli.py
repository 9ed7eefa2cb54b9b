"""Command-line surface: index, cluster, search, eval, compare, fixture.

Artifacts are staged through explicit files in the output directory
(``index.bin``, ``clusters.tsv``, then per-command CSVs and figures) so each
stage can be re-run and tested on its own.  Every option can also be set in
a flat ``key = value`` config file; command-line flags win over the file.
All commands are deterministic for a fixed seed and worker count, and
re-runs produce byte-identical outputs.
"""

from __future__ import annotations

import argparse
import math
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import Mapping

from . import evalkit, fixtures, hpga, kmeans, vsm
from .corpus import ParseError, QueryDoc, load_stoplist, parse_smart_docs, parse_smart_queries, preprocess_text
from .evalkit import EvalReport, Qrels
from .hpga import GaConfig, RankedList
from .vsm import TermVector

ENGINES = ("hpga", "classic", "ga")

_DEFAULTS: dict[str, object] = {
    "docs": None,
    "queries": None,
    "qrels": None,
    "stoplist": None,
    "k": 10,
    "m": None,  # defaults to ceil(k / 2)
    "generations": 50,
    "migration_interval": 5,
    "migration_count": None,
    "seed": 0,
    "engine": "hpga",
    "top_n": 10,
    "workers": 1,
    "out": "out",
    "max_iter": 100,
    "per_query": False,
    "plots": True,
    "trace": False,
}

_INT_KEYS = {"k", "m", "migration_interval", "migration_count", "seed", "top_n", "workers", "max_iter"}
_BOOL_KEYS = {"per_query", "plots", "trace"}


@dataclass
class RunConfig:
    docs: str | None
    queries: str | None
    qrels: str | None
    stoplist: str | None
    k: int
    m: int | None
    generations: int | str
    migration_interval: int
    migration_count: int | None
    seed: int
    engine: str
    top_n: int
    workers: int
    out: str
    max_iter: int
    per_query: bool
    plots: bool
    trace: bool

    @property
    def out_dir(self) -> Path:
        return Path(self.out)

    @property
    def index_path(self) -> Path:
        return self.out_dir / "index.bin"

    @property
    def clusters_path(self) -> Path:
        return self.out_dir / "clusters.tsv"


def _parse_config_file(path: str) -> dict[str, str]:
    values: dict[str, str] = {}
    for lineno, raw in enumerate(Path(path).read_text(encoding="utf-8").splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ValueError(f"{path}:{lineno}: expected 'key = value', got {raw!r}")
        key, _, value = line.partition("=")
        values[key.strip().replace("-", "_")] = value.strip()
    return values


def _parse_generations(value: object) -> int | str:
    if value == hpga.POPULATION_SIZE:
        return hpga.POPULATION_SIZE
    try:
        generations = int(value)  # type: ignore[arg-type]
    except (TypeError, ValueError):
        raise ValueError(
            f"generations must be a positive integer or {hpga.POPULATION_SIZE!r}, got {value!r}"
        ) from None
    return generations


def _coerce(key: str, value: object) -> object:
    if value is None or not isinstance(value, str):
        return value
    if key == "generations":
        return _parse_generations(value)
    if key in _INT_KEYS:
        return int(value)
    if key in _BOOL_KEYS:
        lowered = value.lower()
        if lowered in ("1", "true", "yes", "on"):
            return True
        if lowered in ("0", "false", "no", "off"):
            return False
        raise ValueError(f"config key {key}: expected a boolean, got {value!r}")
    return value


def resolve_config(args: argparse.Namespace) -> RunConfig:
    merged = dict(_DEFAULTS)
    if getattr(args, "config", None):
        for key, value in _parse_config_file(args.config).items():
            if key not in merged:
                raise ValueError(f"unknown config key {key!r}")
            merged[key] = _coerce(key, value)
    for key in merged:
        cli_value = getattr(args, key, None)
        if cli_value is not None:
            merged[key] = _coerce(key, cli_value)
    merged["generations"] = _parse_generations(merged["generations"])
    cfg = RunConfig(**merged)  # type: ignore[arg-type]
    if cfg.engine not in ENGINES:
        raise ValueError(f"unknown engine {cfg.engine!r}; choose from {ENGINES}")
    return cfg


def _ga_config(cfg: RunConfig) -> GaConfig:
    return GaConfig(
        generations=cfg.generations,
        migration_interval=cfg.migration_interval,
        migration_count=cfg.migration_count,
        seed=cfg.seed,
    )


def _load_index(cfg: RunConfig) -> tuple[vsm.Vocabulary, dict[int, TermVector]]:
    if not cfg.index_path.exists():
        raise ValueError(f"index artifact {cfg.index_path} not found; run 'index' first")
    return vsm.load_index(cfg.index_path)


def _load_clusters(cfg: RunConfig, vectors: Mapping[int, TermVector]) -> kmeans.ClusterSet:
    if not cfg.clusters_path.exists():
        raise ValueError(
            f"cluster artifact {cfg.clusters_path} not found; run 'cluster' first"
        )
    assignment, k, iterations = kmeans.read_cluster_dump(cfg.clusters_path)
    return kmeans.clusterset_from_assignment(assignment, vectors, k, iterations)


def _selected_m(cfg: RunConfig, k: int) -> int:
    return cfg.m if cfg.m is not None else max(1, math.ceil(k / 2))


def _query_vectors(
    cfg: RunConfig, vocab: vsm.Vocabulary, queries: list[QueryDoc]
) -> dict[int, TermVector]:
    return {q.id: vsm.query_vector(q, vocab) for q in queries}


def _rank_one(
    engine: str,
    cfg: RunConfig,
    vectors: dict[int, TermVector],
    cs: kmeans.ClusterSet | None,
    query_vec: TermVector,
    query_id: int | None,
    trace_file=None,
) -> RankedList:
    if engine == "classic":
        return evalkit.classic_ir_rank(query_vec, vectors, query_id=query_id)
    if engine == "ga":
        return evalkit.ga_ir_rank(
            query_vec, vectors, _ga_config(cfg),
            workers=cfg.workers, query_id=query_id, trace=trace_file,
        )
    assert cs is not None
    selected = kmeans.select_relevant_clusters(cs, query_vec, _selected_m(cfg, cs.k))
    return hpga.run_hpga(
        vectors,
        cs,
        selected,
        query_vec,
        _ga_config(cfg),
        workers=cfg.workers,
        trace=trace_file,
        query_id=query_id,
    )


def cmd_index(args: argparse.Namespace) -> int:
    cfg = resolve_config(args)
    if not cfg.docs:
        raise ValueError("index requires --docs")
    stoplist = load_stoplist(cfg.stoplist)
    docs = parse_smart_docs(cfg.docs, stoplist)
    vocab = vsm.build_vocabulary(docs)
    vectors = {doc.id: vsm.tfidf_vector(doc, vocab) for doc in docs}
    cfg.out_dir.mkdir(parents=True, exist_ok=True)
    vsm.save_index(cfg.index_path, vocab, vectors)
    print(f"indexed {len(docs)} docs, {len(vocab)} terms -> {cfg.index_path}")
    return 0


def cmd_cluster(args: argparse.Namespace) -> int:
    cfg = resolve_config(args)
    _, vectors = _load_index(cfg)
    cs = kmeans.kmeans_cluster(
        vectors, cfg.k, seed=cfg.seed, max_iter=cfg.max_iter, workers=cfg.workers
    )
    kmeans.write_cluster_dump(cs, cfg.clusters_path)
    sizes = ", ".join(str(s) for s in cs.sizes())
    print(
        f"clustered {len(vectors)} docs into k={cfg.k} "
        f"(iterations {cs.iterations_run}) -> {cfg.clusters_path}"
    )
    print(f"cluster sizes: {sizes}")
    return 0


def cmd_search(args: argparse.Namespace) -> int:
    cfg = resolve_config(args)
    vocab, vectors = _load_index(cfg)
    stoplist = load_stoplist(cfg.stoplist)

    if args.query_id is not None:
        if not cfg.queries:
            raise ValueError("--query-id requires --queries")
        queries = parse_smart_queries(cfg.queries, stoplist)
        matches = [q for q in queries if q.id == args.query_id]
        if not matches:
            raise ValueError(f"query id {args.query_id} not found in {cfg.queries}")
        query = matches[0]
    else:
        query = QueryDoc(id=0, text=args.query_text, tokens=preprocess_text(args.query_text, stoplist))

    query_vec = vsm.query_vector(query, vocab)
    cs = _load_clusters(cfg, vectors) if cfg.engine == "hpga" else None

    cfg.out_dir.mkdir(parents=True, exist_ok=True)
    trace_file = None
    if cfg.trace and cfg.engine in ("hpga", "ga"):
        trace_file = open(cfg.out_dir / f"trace_{cfg.engine}.csv", "w", encoding="utf-8", newline="\n")
    try:
        ranked = _rank_one(
            cfg.engine, cfg, vectors, cs, query_vec,
            query.id if args.query_id is not None else None, trace_file,
        )
    finally:
        if trace_file is not None:
            trace_file.close()

    out_path = cfg.out_dir / f"search_{cfg.engine}.csv"
    with open(out_path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write("rank,doc_id,score\n")
        for rank, (doc_id, score) in enumerate(ranked.entries, start=1):
            fh.write(f"{rank},{doc_id},{score!r}\n")

    print(f"{cfg.engine}: {len(ranked.entries)} documents ranked -> {out_path}")
    for rank, (doc_id, score) in enumerate(ranked.entries[: cfg.top_n], start=1):
        print(f"{rank}\t{doc_id}\t{score!r}")
    return 0


def _evaluate_engine(
    engine: str,
    cfg: RunConfig,
    vocab: vsm.Vocabulary,
    vectors: dict[int, TermVector],
    queries: list[QueryDoc],
    qrels: Qrels,
) -> EvalReport:
    cs = _load_clusters(cfg, vectors) if engine == "hpga" else None
    query_vecs = _query_vectors(cfg, vocab, queries)
    rankings = {
        qid: _rank_one(engine, cfg, vectors, cs, qvec, qid)
        for qid, qvec in query_vecs.items()
    }
    label = Path(cfg.docs).name if cfg.docs else (cfg.out or "corpus")
    return evalkit.evaluate_rankings(rankings, qrels, label=label, engine=engine)


def _require_eval_inputs(cfg: RunConfig) -> tuple[list[QueryDoc], Qrels]:
    if not cfg.queries:
        raise ValueError("eval requires --queries")
    if not cfg.qrels:
        raise ValueError("eval requires --qrels")
    stoplist = load_stoplist(cfg.stoplist)
    queries = parse_smart_queries(cfg.queries, stoplist)
    qrels = evalkit.load_qrels(cfg.qrels)
    return queries, qrels


def cmd_eval(args: argparse.Namespace) -> int:
    cfg = resolve_config(args)
    vocab, vectors = _load_index(cfg)
    queries, qrels = _require_eval_inputs(cfg)
    report = _evaluate_engine(cfg.engine, cfg, vocab, vectors, queries, qrels)

    cfg.out_dir.mkdir(parents=True, exist_ok=True)
    out_path = cfg.out_dir / f"eval_{cfg.engine}.csv"
    evalkit.write_eval_csv(report, out_path, include_per_query=cfg.per_query)
    if cfg.plots:
        from . import plots

        plots.render_eval_figure(report, cfg.out_dir / f"eval_{cfg.engine}.png")
    print(
        f"{cfg.engine}: evaluated {report.evaluated_queries} queries "
        f"({report.skipped_queries} skipped), avg precision {evalkit.fmt_avg(report.averaged.avg)}, "
        f"avg f-measure {evalkit.fmt_avg(report.f_measure_avg)} -> {out_path}"
    )
    return 0


def cmd_compare(args: argparse.Namespace) -> int:
    cfg = resolve_config(args)
    vocab, vectors = _load_index(cfg)
    queries, qrels = _require_eval_inputs(cfg)
    report_a = _evaluate_engine(args.engine_a, cfg, vocab, vectors, queries, qrels)
    report_b = _evaluate_engine(args.engine_b, cfg, vocab, vectors, queries, qrels)

    cfg.out_dir.mkdir(parents=True, exist_ok=True)
    out_path = cfg.out_dir / f"compare_{args.engine_a}_vs_{args.engine_b}.csv"
    evalkit.write_compare_csv(report_a, report_b, out_path)
    if cfg.plots:
        from . import plots

        plots.render_compare_figure(
            report_a, report_b, cfg.out_dir / f"compare_{args.engine_a}_vs_{args.engine_b}.png"
        )
    avg = evalkit.improvement_avg(report_a.averaged, report_b.averaged)
    print(
        f"{args.engine_a} vs {args.engine_b}: avg improvement "
        f"{evalkit.fmt_avg(avg)} pp -> {out_path}"
    )
    return 0


def cmd_fixture(args: argparse.Namespace) -> int:
    cfg = resolve_config(args)
    sizes = {}
    if args.kind == "perfect":
        sizes = {"n_queries": args.n_queries, "dups_per_query": args.dups, "n_noise": args.noise}
    elif args.kind == "disjoint":
        sizes = {"n_queries": args.n_queries, "n_docs": args.noise}
    elif args.kind == "separated":
        sizes = {"group_size": args.group_size}
    paths = fixtures.write_fixture(args.kind, cfg.out, **sizes)
    print(
        f"fixture '{args.kind}' written: docs={paths['docs']} "
        f"queries={paths['queries']} qrels={paths['qrels']}"
    )
    return 0


def _add_common_options(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--config", help="flat key = value config file")
    parser.add_argument("--docs", help="SMART-format collection file")
    parser.add_argument("--queries", help="SMART-format query file")
    parser.add_argument("--qrels", help="relevance judgments file")
    parser.add_argument("--stoplist", help="stopword list file (default: built-in)")
    parser.add_argument("--k", type=int, help="number of k-means clusters")
    parser.add_argument("--m", type=int, help="clusters selected per query (default: ceil(k/2))")
    parser.add_argument(
        "--generations",
        help=f"GA generations: positive integer or '{hpga.POPULATION_SIZE}'",
    )
    parser.add_argument("--migration-interval", type=int, dest="migration_interval")
    parser.add_argument("--migration-count", type=int, dest="migration_count")
    parser.add_argument("--seed", type=int, help="master random seed")
    parser.add_argument("--engine", choices=ENGINES, help="retrieval engine")
    parser.add_argument("--top-n", type=int, dest="top_n", help="results to print")
    parser.add_argument("--workers", type=int, help="parallel workers (output is identical for any N)")
    parser.add_argument("--out", help="output directory for staged artifacts")
    parser.add_argument("--max-iter", type=int, dest="max_iter", help="k-means iteration cap")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cluster-ir",
        description="Cluster-based retrieval: TF-IDF index, k-means partitioning, "
        "genetic search engines and a precision/recall evaluation harness.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_index = sub.add_parser("index", help="parse a collection and persist its TF-IDF index")
    _add_common_options(p_index)
    p_index.set_defaults(func=cmd_index)

    p_cluster = sub.add_parser("cluster", help="partition the index into k clusters")
    _add_common_options(p_cluster)
    p_cluster.set_defaults(func=cmd_cluster)

    p_search = sub.add_parser("search", help="rank documents for one query")
    _add_common_options(p_search)
    group = p_search.add_mutually_exclusive_group(required=True)
    group.add_argument("--query-text", dest="query_text", help="free-text query")
    group.add_argument("--query-id", dest="query_id", type=int, help="query id from --queries")
    p_search.add_argument("--trace", action="store_true", default=None,
                          help="write a per-generation fitness trace CSV")
    p_search.set_defaults(func=cmd_search)

    p_eval = sub.add_parser("eval", help="evaluate an engine over all judged queries")
    _add_common_options(p_eval)
    p_eval.add_argument("--per-query", dest="per_query", action="store_true", default=None,
                        help="also emit one CSV row per query")
    p_eval.add_argument("--no-plots", dest="plots", action="store_false", default=None,
                        help="skip figure rendering")
    p_eval.set_defaults(func=cmd_eval)

    p_compare = sub.add_parser("compare", help="evaluate two engines and report improvements")
    p_compare.add_argument("engine_a", choices=ENGINES)
    p_compare.add_argument("engine_b", choices=ENGINES)
    _add_common_options(p_compare)
    p_compare.add_argument("--no-plots", dest="plots", action="store_false", default=None,
                           help="skip figure rendering")
    p_compare.set_defaults(func=cmd_compare)

    p_fixture = sub.add_parser("fixture", help="generate a synthetic corpus for tests and demos")
    _add_common_options(p_fixture)
    p_fixture.add_argument("--kind", choices=("perfect", "disjoint", "separated"), required=True)
    p_fixture.add_argument("--n-queries", type=int, default=4, dest="n_queries")
    p_fixture.add_argument("--dups", type=int, default=4)
    p_fixture.add_argument("--noise", type=int, default=30)
    p_fixture.add_argument("--group-size", type=int, default=15, dest="group_size")
    p_fixture.set_defaults(func=cmd_fixture)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ParseError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
