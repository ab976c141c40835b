"""Multi-method comparison against ground truth.

Produces one JSON-serializable report covering, per disambiguation method:
unique-author counts and their percent change, clustering-quality metrics
with the misidentification breakdown, every network statistic with percent
changes, threshold-based top-k comparisons for productivity and degree,
and (when an origin list is supplied) how misidentification concentrates
on listed surnames. Optionally emits cumulative-distribution CSVs per
method and measure.
"""

from __future__ import annotations

from pathlib import Path

from .corpus import Clustering, Corpus
from .evalmetrics import evaluate
from .heuristic import ClusterResult, cluster
from .ibd import ad_partition, fd_partition, hd_partition
from .names import NicknameTable, OriginList
from .netstats import (
    NetworkStats,
    build_graph,
    compute_stats,
    crosswalk,
    cumulative_distribution,
    misattribution_share,
    productivity,
    top_k_report,
)

METHODS = ("fd", "ad", "hd", "heuristic")
TOP_K = 20


def run_method(
    name: str,
    corpus: Corpus,
    nicknames: NicknameTable | None = None,
    origins: OriginList | None = None,
) -> tuple[Clustering, ClusterResult | None]:
    """Dispatch one disambiguation method; heuristic also returns its logs."""
    if name == "fd":
        return fd_partition(corpus), None
    if name == "ad":
        return ad_partition(corpus), None
    if name == "hd":
        return hd_partition(corpus), None
    if name == "heuristic":
        result = cluster(corpus, nicknames=nicknames, origins=origins)
        return result.clustering, result
    raise ValueError(f"unknown method {name!r}")


def percent_change(value: float | None, reference: float | None) -> float | None:
    if value is None or reference is None or reference == 0:
        return None
    return 100.0 * (value - reference) / reference


def _network_changes(stats: NetworkStats, truth: NetworkStats) -> dict:
    changes = {}
    truth_dict = truth.as_dict()
    for field, value in stats.as_dict().items():
        changes[field] = percent_change(value, truth_dict[field])
    return changes


def compare_report(
    corpus: Corpus,
    truth: Clustering,
    methods: tuple[str, ...] = ("fd", "ad", "hd"),
    nicknames: NicknameTable | None = None,
    origins: OriginList | None = None,
    curves_dir: str | Path | None = None,
) -> dict:
    """Run each method against the truth labels and assemble the report."""
    for name in methods:
        if name not in METHODS:
            raise ValueError(f"unknown method {name!r}")
    truth_stats = compute_stats(corpus, truth)
    truth_prod = productivity(corpus, truth)
    truth_deg = build_graph(corpus, truth).degrees()
    if curves_dir is not None:
        _write_curves(curves_dir, "truth", truth_prod, truth_deg)

    report: dict = {
        "n_papers": len(corpus.papers),
        "n_mentions": len(corpus.mentions),
        "truth": {
            "unique_authors": truth.n_clusters,
            "network": truth_stats.as_dict(),
        },
        "methods": {},
    }
    for name in methods:
        clustering, _ = run_method(name, corpus, nicknames, origins)
        stats = compute_stats(corpus, clustering)
        prod = productivity(corpus, clustering)
        deg = build_graph(corpus, clustering).degrees()
        mapping = crosswalk(truth, clustering)
        entry: dict = {
            "unique_authors": clustering.n_clusters,
            "unique_authors_change_pct": percent_change(
                clustering.n_clusters, truth.n_clusters
            ),
            "evaluation": evaluate(clustering, truth).as_dict(),
            "network": stats.as_dict(),
            "network_change_pct": _network_changes(stats, truth_stats),
            "top": {
                "productivity": top_k_report(truth_prod, prod, TOP_K, mapping).as_dict(),
                "degree": top_k_report(truth_deg, deg, TOP_K, mapping).as_dict(),
            },
        }
        if origins is not None and len(origins) > 0:
            population, misidentified = misattribution_share(
                truth, clustering, corpus, origins
            )
            entry["misattribution"] = {
                "population_share": population,
                "misidentified_share": misidentified,
            }
        report["methods"][name] = entry
        if curves_dir is not None:
            _write_curves(curves_dir, name, prod, deg)
    return report


def _write_curves(
    curves_dir: str | Path,
    label: str,
    prod: dict[str, int],
    deg: dict[str, int],
) -> None:
    directory = Path(curves_dir)
    directory.mkdir(parents=True, exist_ok=True)
    cumulative_distribution(list(prod.values())).write_csv(
        directory / f"{label}_productivity.csv"
    )
    cumulative_distribution(list(deg.values())).write_csv(
        directory / f"{label}_degree.csv"
    )
