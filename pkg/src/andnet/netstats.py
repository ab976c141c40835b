"""Coauthorship graph construction and the statistics reported per method.

The graph is unweighted and simple: an edge says two author identities
appeared on at least one common byline, repeated collaboration is ignored,
and a byline pair that collapses into a single cluster contributes nothing.
Metrics that are undefined on a given graph (no reachable pair, no
connected triple, zero degree variance) are reported as None and serialize
as JSON null rather than 0.

Shortest paths, components and the matrix plumbing are delegated to
scipy.sparse.csgraph; the test suite checks every metric against
brute-force reimplementations on small random graphs.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass
from functools import cached_property
from itertools import combinations
from pathlib import Path

import numpy as np
from scipy import sparse
from scipy.sparse import csgraph

from .corpus import Clustering, Corpus
from .errors import MentionSetMismatch
from .evalmetrics import misidentified_flags
from .names import OriginList, in_origin_list, parse_name

_BATCH_CELLS = 8_388_608  # ~64 MB of float64 distance rows per BFS batch


class CoauthorGraph:
    """Simple undirected graph over cluster ids."""

    def __init__(self, nodes, edges):
        self.nodes: tuple[str, ...] = tuple(sorted(nodes))
        normalized = set()
        for u, v in edges:
            if u == v:
                raise ValueError(f"self-loop on {u!r}")
            normalized.add((u, v) if u < v else (v, u))
        self.edges: frozenset[tuple[str, str]] = frozenset(normalized)

    @cached_property
    def _index(self) -> dict[str, int]:
        return {node: i for i, node in enumerate(self.nodes)}

    @cached_property
    def _matrix(self) -> sparse.csr_matrix:
        n = len(self.nodes)
        if not self.edges:
            return sparse.csr_matrix((n, n), dtype=np.int8)
        rows, cols = [], []
        for u, v in self.edges:
            ui, vi = self._index[u], self._index[v]
            rows.extend((ui, vi))
            cols.extend((vi, ui))
        mat = sparse.coo_matrix(
            (np.ones(len(rows), dtype=np.int8), (rows, cols)), shape=(n, n)
        ).tocsr()
        mat.sort_indices()
        return mat

    def degrees(self) -> dict[str, int]:
        counts = np.diff(self._matrix.indptr)
        return {node: int(counts[i]) for i, node in enumerate(self.nodes)}

    @property
    def n_nodes(self) -> int:
        return len(self.nodes)

    @property
    def n_edges(self) -> int:
        return len(self.edges)


def build_graph(corpus: Corpus, clustering: Clustering) -> CoauthorGraph:
    """Clique-expand every byline under the clustering and deduplicate."""
    if clustering.mention_ids != corpus.mention_ids:
        raise MentionSetMismatch(
            "clustering does not cover exactly the corpus mentions"
        )
    nodes: set[str] = set()
    edges: set[tuple[str, str]] = set()
    for paper in corpus.papers:
        byline = sorted({clustering.cluster_of(m.mention_id) for m in paper.authors})
        nodes.update(byline)
        for u, v in combinations(byline, 2):
            edges.add((u, v))
    return CoauthorGraph(nodes, edges)


def productivity(corpus: Corpus, clustering: Clustering) -> dict[str, int]:
    """Distinct papers per cluster."""
    papers_of: dict[str, set[str]] = {}
    for paper in corpus.papers:
        for mention in paper.authors:
            cid = clustering.cluster_of(mention.mention_id)
            papers_of.setdefault(cid, set()).add(paper.paper_id)
    return {cid: len(ps) for cid, ps in papers_of.items()}


def components(graph: CoauthorGraph) -> tuple[int, float]:
    """(number of components, largest component size / node count)."""
    if graph.n_nodes == 0:
        return 0, 0.0
    n_comp, labels = csgraph.connected_components(graph._matrix, directed=False)
    largest = int(np.bincount(labels).max())
    return int(n_comp), largest / graph.n_nodes


def avg_shortest_path(graph: CoauthorGraph) -> float | None:
    """Mean geodesic over reachable pairs; None when no pair is reachable."""
    n = graph.n_nodes
    if n == 0 or not graph.edges:
        return None
    mat = graph._matrix
    batch = max(1, _BATCH_CELLS // n)
    total = 0.0
    count = 0
    for start in range(0, n, batch):
        idx = np.arange(start, min(start + batch, n))
        dist = csgraph.dijkstra(mat, directed=False, unweighted=True, indices=idx)
        reachable = np.isfinite(dist) & (dist > 0)
        total += float(dist[reachable].sum())
        count += int(reachable.sum())
    if count == 0:
        return None
    return total / count


def transitivity(graph: CoauthorGraph) -> float | None:
    """3 * triangles / connected triples; None when there are no triples."""
    mat = graph._matrix
    deg = np.diff(mat.indptr).astype(np.int64)
    triples = int((deg * (deg - 1) // 2).sum())
    if triples == 0:
        return None
    indptr, indices = mat.indptr, mat.indices
    common = 0
    for u, v in graph.edges:
        ui, vi = graph._index[u], graph._index[v]
        nu = indices[indptr[ui] : indptr[ui + 1]]
        nv = indices[indptr[vi] : indptr[vi + 1]]
        common += int(np.intersect1d(nu, nv, assume_unique=True).size)
    return common / triples


def assortativity(graph: CoauthorGraph) -> float | None:
    """Pearson correlation of degrees over edge endpoints, both orientations.

    None when the graph has no edges or the endpoint degrees are constant.
    """
    if not graph.edges:
        return None
    deg = np.diff(graph._matrix.indptr).astype(np.float64)
    pairs = np.array(
        [(graph._index[u], graph._index[v]) for u, v in sorted(graph.edges)]
    )
    du, dv = deg[pairs[:, 0]], deg[pairs[:, 1]]
    x = np.concatenate([du, dv])
    y = np.concatenate([dv, du])
    sx, sy = float(x.std()), float(y.std())
    if sx == 0.0 or sy == 0.0:
        return None
    r = (float((x * y).mean()) - float(x.mean()) * float(y.mean())) / (sx * sy)
    return min(1.0, max(-1.0, r))


@dataclass(frozen=True)
class NetworkStats:
    unique_authors: int
    n_edges: int
    density: float | None
    avg_productivity: float | None
    sd_productivity: float | None
    avg_degree: float | None
    sd_degree: float | None
    n_components: int
    largest_component_ratio: float | None
    avg_shortest_path: float | None
    transitivity: float | None
    assortativity: float | None

    def as_dict(self) -> dict:
        return {
            "unique_authors": self.unique_authors,
            "n_edges": self.n_edges,
            "density": self.density,
            "avg_productivity": self.avg_productivity,
            "sd_productivity": self.sd_productivity,
            "avg_degree": self.avg_degree,
            "sd_degree": self.sd_degree,
            "n_components": self.n_components,
            "largest_component_ratio": self.largest_component_ratio,
            "avg_shortest_path": self.avg_shortest_path,
            "transitivity": self.transitivity,
            "assortativity": self.assortativity,
        }


def _mean_sd(values: list[int]) -> tuple[float | None, float | None]:
    if not values:
        return None, None
    arr = np.asarray(values, dtype=np.float64)
    return float(arr.mean()), float(arr.std())


def compute_stats(corpus: Corpus, clustering: Clustering) -> NetworkStats:
    """All Table-style statistics for one clustering of one corpus."""
    graph = build_graph(corpus, clustering)
    n = graph.n_nodes
    prod = productivity(corpus, clustering)
    avg_prod, sd_prod = _mean_sd(list(prod.values()))
    deg = graph.degrees()
    avg_deg, sd_deg = _mean_sd(list(deg.values()))
    n_comp, largest_ratio = components(graph)
    density = 2 * graph.n_edges / (n * (n - 1)) if n >= 2 else None
    return NetworkStats(
        unique_authors=n,
        n_edges=graph.n_edges,
        density=density,
        avg_productivity=avg_prod,
        sd_productivity=sd_prod,
        avg_degree=avg_deg,
        sd_degree=sd_deg,
        n_components=n_comp,
        largest_component_ratio=largest_ratio if n > 0 else None,
        avg_shortest_path=avg_shortest_path(graph),
        transitivity=transitivity(graph),
        assortativity=assortativity(graph),
    )


@dataclass(frozen=True)
class DistributionCurve:
    """Per distinct value: (value, count, fraction of authors at or above)."""

    points: tuple[tuple[int, int, float], ...]

    def write_csv(self, path: str | Path) -> None:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            writer = csv.writer(fh, lineterminator="\n")
            writer.writerow(["value", "count", "cum_fraction"])
            for value, count, fraction in self.points:
                writer.writerow([value, count, repr(fraction)])


def cumulative_distribution(values: list[int]) -> DistributionCurve:
    if not values:
        raise ValueError("cumulative_distribution needs at least one value")
    n = len(values)
    counts: dict[int, int] = {}
    for v in values:
        counts[v] = counts.get(v, 0) + 1
    points = []
    at_or_above = n
    for value in sorted(counts):
        points.append((value, counts[value], at_or_above / n))
        at_or_above -= counts[value]
    return DistributionCurve(tuple(points))


def crosswalk(ref: Clustering, cmp: Clustering) -> dict[str, str]:
    """Map each reference cluster to the compared cluster it mostly lives in.

    Largest mention overlap wins; ties go to the lexicographically smallest
    compared cluster id.
    """
    if ref.mention_ids != cmp.mention_ids:
        raise MentionSetMismatch("clusterings cover different mentions")
    mapping: dict[str, str] = {}
    for ref_id, members in ref.clusters.items():
        overlap: dict[str, int] = {}
        for mention_id in members:
            cid = cmp.cluster_of(mention_id)
            overlap[cid] = overlap.get(cid, 0) + 1
        mapping[ref_id] = min(overlap, key=lambda cid: (-overlap[cid], cid))
    return mapping


@dataclass(frozen=True)
class TopKReport:
    k: int
    threshold: int
    ref_admitted: tuple[str, ...]
    cmp_admitted: tuple[str, ...]
    top10_overlap: int
    top1_changed: bool

    def as_dict(self) -> dict:
        return {
            "k": self.k,
            "threshold": self.threshold,
            "ref_admitted_count": len(self.ref_admitted),
            "cmp_admitted_count": len(self.cmp_admitted),
            "top10_overlap": self.top10_overlap,
            "top1_changed": self.top1_changed,
        }


def _top(values: dict[str, int], k: int) -> list[str]:
    return sorted(values, key=lambda cid: (-values[cid], cid))[:k]


def top_k_report(
    ref_values: dict[str, int],
    cmp_values: dict[str, int],
    k: int,
    mapping: dict[str, str],
) -> TopKReport:
    """Threshold-based top-k comparison between a reference and one method.

    The threshold is the largest value that still admits at least k
    reference authors (ties included), mirroring how top-20 lists are
    reported when rankings are heavily tied.
    """
    if not ref_values or not cmp_values:
        raise ValueError("top_k_report needs non-empty value maps")
    ordered = sorted(set(ref_values.values()), reverse=True)
    threshold = ordered[-1]
    admitted = 0
    counts: dict[int, int] = {}
    for v in ref_values.values():
        counts[v] = counts.get(v, 0) + 1
    for value in ordered:
        admitted += counts[value]
        if admitted >= k:
            threshold = value
            break
    ref_admitted = tuple(sorted(c for c, v in ref_values.items() if v >= threshold))
    cmp_admitted = tuple(sorted(c for c, v in cmp_values.items() if v >= threshold))

    ref_top10 = _top(ref_values, 10)
    cmp_top10 = set(_top(cmp_values, 10))
    top10_overlap = sum(1 for r in ref_top10 if mapping[r] in cmp_top10)
    ref_top1 = _top(ref_values, 1)[0]
    cmp_top1 = _top(cmp_values, 1)[0]
    top1_changed = mapping[ref_top1] != cmp_top1
    return TopKReport(k, threshold, ref_admitted, cmp_admitted, top10_overlap, top1_changed)


def misattribution_share(
    ref: Clustering,
    pred: Clustering,
    corpus: Corpus,
    origins: OriginList,
) -> tuple[float, float]:
    """(share of listed-surname authors overall, share among misidentified).

    A reference cluster counts as listed when its majority surname (ties
    broken lexicographically) is on the origin list; misidentified means
    split and/or merged by the predicted clustering.
    """
    flags = misidentified_flags(pred, ref)
    surname_tokens = {
        m.mention_id: parse_name(m.surname_raw, m.given_raw).surname_tokens
        for m in corpus.mentions
    }
    listed: dict[str, bool] = {}
    for ref_id, members in ref.clusters.items():
        tally: dict[tuple[str, ...], int] = {}
        for mention_id in members:
            key = surname_tokens[mention_id]
            tally[key] = tally.get(key, 0) + 1
        majority = min(tally, key=lambda toks: (-tally[toks], toks))
        listed[ref_id] = in_origin_list(majority, origins)

    total = len(listed)
    if total == 0:
        return 0.0, 0.0
    population_share = sum(listed.values()) / total
    flagged = [ref_id for ref_id, (s, m) in flags.items() if s or m]
    if not flagged:
        return population_share, 0.0
    misidentified_share = sum(listed[r] for r in flagged) / len(flagged)
    return population_share, misidentified_share
