import math
import random

import pytest

from andnet.corpus import Clustering
from andnet.errors import MentionSetMismatch
from andnet.evalmetrics import (
    cluster_f1,
    evaluate,
    k_metric,
    m_rate,
    overlap_table,
)

from oracles import random_partition

# The canonical 4-mention fixture: reference pairs {a1,a2},{a3,a4};
# prediction puts a3 with the first pair.
REF = Clustering({"a1": "r1", "a2": "r1", "a3": "r2", "a4": "r2"})
PRED = Clustering({"a1": "q1", "a2": "q1", "a3": "q1", "a4": "q2"})


class TestOverlapTable:
    def test_identity(self):
        ref = Clustering({"a": "x", "b": "x", "c": "y", "d": "y", "e": "y"})
        table = overlap_table(ref, ref)
        assert table.n == 5
        assert set(table.overlaps.values()) == {2, 3}

    def test_marginals(self):
        table = overlap_table(PRED, REF)
        assert sum(table.overlaps.values()) == table.n == 4
        for pred_id, size in table.pred_sizes.items():
            assert sum(c for (p, _), c in table.overlaps.items() if p == pred_id) == size
        for ref_id, size in table.ref_sizes.items():
            assert sum(c for (_, r), c in table.overlaps.items() if r == ref_id) == size

    def test_mention_mismatch_rejected(self):
        with pytest.raises(MentionSetMismatch):
            overlap_table(PRED, Clustering({"zz": "r1"}))


class TestKMetric:
    def test_perfect(self):
        table = overlap_table(REF, REF)
        assert k_metric(table) == (1.0, 1.0, 1.0)

    def test_four_mention_fixture(self):
        acp, aap, k = k_metric(overlap_table(PRED, REF))
        assert acp == pytest.approx(2 / 3, abs=1e-12)
        assert aap == pytest.approx(3 / 4, abs=1e-12)
        assert k == pytest.approx(math.sqrt(0.5), abs=1e-12)

    def test_all_singletons_vs_one_cluster(self):
        ref = Clustering({m: "r" for m in "abcd"})
        pred = Clustering({m: m for m in "abcd"})
        acp, aap, k = k_metric(overlap_table(pred, ref))
        assert (acp, aap, k) == (1.0, 0.25, 0.5)


class TestClusterF1:
    def test_perfect(self):
        ref = Clustering({"a": "x", "b": "x", "c": "y"})
        assert cluster_f1(ref, ref) == (1.0, 1.0, 1.0)

    def test_no_exact_cluster(self):
        assert cluster_f1(PRED, REF) == (0.0, 0.0, 0.0)

    def test_label_invariance(self):
        ref = Clustering({"a": "x", "b": "x", "c": "y"})
        relabeled = Clustering({"a": "k9", "b": "k9", "c": "k7"})
        assert cluster_f1(relabeled, ref) == (1.0, 1.0, 1.0)


class TestMRate:
    def test_perfect(self):
        rate, breakdown = m_rate(REF, REF)
        assert rate == 0.0
        assert breakdown.as_dict() == {
            "split_only": 0.0,
            "merge_only": 0.0,
            "split_and_merge": 0.0,
        }

    def test_four_mention_fixture(self):
        rate, breakdown = m_rate(PRED, REF)
        assert rate == 1.0
        assert breakdown.merge_only == 0.5
        assert breakdown.split_and_merge == 0.5
        assert breakdown.split_only == 0.0

    def test_equals_one_minus_cluster_recall(self):
        rate, _ = m_rate(PRED, REF)
        _, cr, _ = cluster_f1(PRED, REF)
        assert rate == 1 - cr == 1.0

    def test_random_partitions_identity(self):
        rng = random.Random(99)
        for _ in range(120):
            items = [f"m{i}" for i in range(rng.randint(1, 12))]
            pred = Clustering(random_partition(rng, items))
            ref = Clustering(random_partition(rng, items))
            rate, breakdown = m_rate(pred, ref)
            _, cr, _ = cluster_f1(pred, ref)
            assert rate == pytest.approx(1 - cr, abs=1e-12)
            if rate > 0:
                total = (
                    breakdown.split_only
                    + breakdown.merge_only
                    + breakdown.split_and_merge
                )
                assert total == pytest.approx(1.0, abs=1e-12)


class TestEvaluate:
    def test_report_fields(self):
        report = evaluate(PRED, REF)
        data = report.as_dict()
        assert set(data) == {
            "acp", "aap", "k", "cp", "cr", "cf1", "m_rate", "breakdown",
        }
        assert data["m_rate"] == 1.0
        assert data["cf1"] == 0.0

    def test_bounds_on_random_pairs(self):
        rng = random.Random(4)
        for _ in range(60):
            items = [f"m{i}" for i in range(rng.randint(1, 10))]
            pred = Clustering(random_partition(rng, items))
            ref = Clustering(random_partition(rng, items))
            report = evaluate(pred, ref)
            for value in (report.acp, report.aap, report.k, report.cp, report.cr, report.cf1, report.m_rate):
                assert 0.0 <= value <= 1.0
            assert min(report.acp, report.aap) - 1e-12 <= report.k <= max(report.acp, report.aap) + 1e-12

    def test_purity_flags(self):
        # Pure split: no predicted cluster mixes identities -> ACP = 1.
        ref = Clustering({"a": "r", "b": "r", "c": "r"})
        split = Clustering({"a": "x", "b": "y", "c": "y"})
        report = evaluate(split, ref)
        assert report.acp == 1.0 and report.aap < 1.0
        # Pure merge: no reference cluster split -> AAP = 1.
        merged = Clustering({"a": "x", "b": "x", "c": "x"})
        ref2 = Clustering({"a": "r1", "b": "r1", "c": "r2"})
        report2 = evaluate(merged, ref2)
        assert report2.aap == 1.0 and report2.acp < 1.0
