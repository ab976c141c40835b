"""Author name disambiguation and coauthorship-network distortion measurement."""

from .corpus import (
    AuthorMention,
    Clustering,
    Corpus,
    PaperRecord,
    filter_papers,
    load_corpus,
    read_labels,
    write_corpus,
    write_labels,
)
from .errors import (
    AndnetError,
    CorpusFormatError,
    LabelFileError,
    MentionSetMismatch,
    SpecValidationError,
)
from .evalmetrics import EvalReport, evaluate, k_metric, cluster_f1, m_rate, overlap_table
from .generator import SyntheticSpec, SyntheticResult, generate_synthetic
from .heuristic import cluster
from .ibd import ad_partition, fd_partition, hd_partition
from .names import NicknameTable, OriginList, ParsedName, parse_name
from .netstats import CoauthorGraph, NetworkStats, build_graph, compute_stats
from .report import compare_report, run_method

__version__ = "0.1.0"

__all__ = [
    "AndnetError",
    "AuthorMention",
    "Clustering",
    "CoauthorGraph",
    "Corpus",
    "CorpusFormatError",
    "EvalReport",
    "LabelFileError",
    "MentionSetMismatch",
    "NetworkStats",
    "NicknameTable",
    "OriginList",
    "PaperRecord",
    "ParsedName",
    "SpecValidationError",
    "SyntheticResult",
    "SyntheticSpec",
    "ad_partition",
    "build_graph",
    "cluster",
    "cluster_f1",
    "compare_report",
    "compute_stats",
    "evaluate",
    "fd_partition",
    "filter_papers",
    "generate_synthetic",
    "hd_partition",
    "k_metric",
    "load_corpus",
    "m_rate",
    "overlap_table",
    "parse_name",
    "read_labels",
    "run_method",
    "write_corpus",
    "write_labels",
]
