"""Cluster-based text retrieval with a two-level parallel genetic engine.

Pipeline: SMART-format parsing and text normalization (`corpus`), TF-IDF
sparse vectors and cosine similarity (`vsm`), k-means partitioning
(`kmeans`), the genetic search engine over query-relevant clusters
(`hpga`), baselines plus precision/recall evaluation (`evalkit`), and a
staged command-line interface (`cli`).
"""

from .corpus import (
    Document,
    ParseError,
    QueryDoc,
    StopList,
    load_stoplist,
    parse_smart_docs,
    parse_smart_queries,
    preprocess_text,
    remove_stopwords,
    tokenize,
)
from .evalkit import (
    EvalReport,
    PrecisionRow,
    Qrels,
    classic_ir_rank,
    evaluate_rankings,
    f_measure,
    ga_ir_rank,
    improvement_avg,
    improvement_row,
    interpolated_precision_row,
    load_qrels,
    recall_precision,
)
from .hpga import (
    Chromosome,
    Deme,
    GaConfig,
    POPULATION_SIZE,
    RankedList,
    run_hpga,
    run_single_population,
)
from .kmeans import (
    ClusterSet,
    cos_distance,
    kmeans_cluster,
    select_relevant_clusters,
)
from .porter import porter_stem
from .vsm import (
    TermVector,
    Vocabulary,
    build_vocabulary,
    cosine,
    idf,
    load_index,
    query_vector,
    save_index,
    tf,
    tfidf_vector,
)

__version__ = "0.1.0"

__all__ = [
    "Chromosome",
    "ClusterSet",
    "Deme",
    "Document",
    "EvalReport",
    "GaConfig",
    "ParseError",
    "POPULATION_SIZE",
    "PrecisionRow",
    "Qrels",
    "QueryDoc",
    "RankedList",
    "StopList",
    "TermVector",
    "Vocabulary",
    "build_vocabulary",
    "classic_ir_rank",
    "cos_distance",
    "cosine",
    "evaluate_rankings",
    "f_measure",
    "ga_ir_rank",
    "idf",
    "improvement_avg",
    "improvement_row",
    "interpolated_precision_row",
    "kmeans_cluster",
    "load_index",
    "load_qrels",
    "load_stoplist",
    "parse_smart_docs",
    "parse_smart_queries",
    "porter_stem",
    "preprocess_text",
    "query_vector",
    "recall_precision",
    "remove_stopwords",
    "run_hpga",
    "run_single_population",
    "save_index",
    "select_relevant_clusters",
    "tf",
    "tfidf_vector",
    "tokenize",
]
