"""Clustering-quality metrics against a reference partition.

Three families, all computed from the same overlap table:

* purity metrics: average cluster purity (sensitive to merging), average
  author purity (sensitive to splitting), and their geometric mean;
* cluster F1: precision/recall over exact-set cluster matches;
* misidentification rate: the share of reference identities that were
  merged and/or split, with the split-only / merge-only / both breakdown.

The misidentification rate equals 1 - cluster recall by construction: a
reference cluster is untouched exactly when some predicted cluster equals
it as a set.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .corpus import Clustering
from .errors import MentionSetMismatch


@dataclass(frozen=True)
class OverlapTable:
    """Contingency counts between a predicted and a reference clustering."""

    n: int
    pred_sizes: dict[str, int]
    ref_sizes: dict[str, int]
    overlaps: dict[tuple[str, str], int]


@dataclass(frozen=True)
class MisidBreakdown:
    split_only: float
    merge_only: float
    split_and_merge: float

    def as_dict(self) -> dict[str, float]:
        return {
            "split_only": self.split_only,
            "merge_only": self.merge_only,
            "split_and_merge": self.split_and_merge,
        }


@dataclass(frozen=True)
class EvalReport:
    acp: float
    aap: float
    k: float
    cp: float
    cr: float
    cf1: float
    m_rate: float
    breakdown: MisidBreakdown

    def as_dict(self) -> dict:
        return {
            "acp": self.acp,
            "aap": self.aap,
            "k": self.k,
            "cp": self.cp,
            "cr": self.cr,
            "cf1": self.cf1,
            "m_rate": self.m_rate,
            "breakdown": self.breakdown.as_dict(),
        }


def overlap_table(pred: Clustering, ref: Clustering) -> OverlapTable:
    """Exact contingency counts; both sides must cover the same mentions."""
    if pred.mention_ids != ref.mention_ids:
        only_pred = sorted(pred.mention_ids - ref.mention_ids)[:5]
        only_ref = sorted(ref.mention_ids - pred.mention_ids)[:5]
        raise MentionSetMismatch(
            f"clusterings cover different mentions "
            f"(only in predicted: {only_pred}, only in reference: {only_ref})"
        )
    overlaps: dict[tuple[str, str], int] = {}
    for mention_id in sorted(pred.mention_ids):
        key = (pred.cluster_of(mention_id), ref.cluster_of(mention_id))
        overlaps[key] = overlaps.get(key, 0) + 1
    pred_sizes = {cid: len(ms) for cid, ms in pred.clusters.items()}
    ref_sizes = {cid: len(ms) for cid, ms in ref.clusters.items()}
    return OverlapTable(len(pred.mention_ids), pred_sizes, ref_sizes, overlaps)


def k_metric(table: OverlapTable) -> tuple[float, float, float]:
    """(average cluster purity, average author purity, geometric mean).

    Sums run in sorted key order so equal tables give bit-identical floats
    regardless of how the clusterings were constructed.
    """
    if table.n < 1:
        raise ValueError("empty mention set")
    cells = sorted(table.overlaps.items())
    acp = sum(
        count * count / table.pred_sizes[pred_id] for (pred_id, _), count in cells
    ) / table.n
    aap = sum(
        count * count / table.ref_sizes[ref_id] for (_, ref_id), count in cells
    ) / table.n
    return acp, aap, math.sqrt(acp * aap)


def _correct_cluster_count(table: OverlapTable) -> int:
    return sum(
        1
        for (pred_id, ref_id), count in table.overlaps.items()
        if count == table.pred_sizes[pred_id] == table.ref_sizes[ref_id]
    )


def cluster_f1(pred: Clustering, ref: Clustering) -> tuple[float, float, float]:
    """Exact-set cluster precision, recall, and their harmonic mean."""
    table = overlap_table(pred, ref)
    correct = _correct_cluster_count(table)
    cp = correct / len(table.pred_sizes)
    cr = correct / len(table.ref_sizes)
    cf1 = 0.0 if cp + cr == 0 else 2 * cp * cr / (cp + cr)
    return cp, cr, cf1


def misidentified_flags(pred: Clustering, ref: Clustering) -> dict[str, tuple[bool, bool]]:
    """Per reference cluster: (was split, was merged)."""
    if pred.mention_ids != ref.mention_ids:
        raise MentionSetMismatch("clusterings cover different mentions")
    pred_sizes = {cid: len(ms) for cid, ms in pred.clusters.items()}
    flags: dict[str, tuple[bool, bool]] = {}
    for ref_id, members in ref.clusters.items():
        touched: dict[str, int] = {}
        for mention_id in members:
            pid = pred.cluster_of(mention_id)
            touched[pid] = touched.get(pid, 0) + 1
        split = len(touched) >= 2
        merged = any(pred_sizes[pid] > count for pid, count in touched.items())
        flags[ref_id] = (split, merged)
    return flags


def m_rate(pred: Clustering, ref: Clustering) -> tuple[float, MisidBreakdown]:
    """Share of reference identities compromised, with the s/m/s&m split."""
    flags = misidentified_flags(pred, ref)
    n_split_only = sum(1 for s, m in flags.values() if s and not m)
    n_merge_only = sum(1 for s, m in flags.values() if m and not s)
    n_both = sum(1 for s, m in flags.values() if s and m)
    n_bad = n_split_only + n_merge_only + n_both
    rate = n_bad / len(flags)
    if n_bad == 0:
        return 0.0, MisidBreakdown(0.0, 0.0, 0.0)
    return rate, MisidBreakdown(
        n_split_only / n_bad, n_merge_only / n_bad, n_both / n_bad
    )


def evaluate(pred: Clustering, ref: Clustering) -> EvalReport:
    """All metrics in one report."""
    table = overlap_table(pred, ref)
    acp, aap, k = k_metric(table)
    cp, cr, cf1 = cluster_f1(pred, ref)
    rate, breakdown = m_rate(pred, ref)
    return EvalReport(acp, aap, k, cp, cr, cf1, rate, breakdown)
