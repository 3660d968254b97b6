import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from cobra.constraints import Relation
from cobra.dataset import Dataset
from cobra.evaluation import (
    FoldResult,
    ari,
    baseline_closure,
    baseline_full,
    cross_validate,
    make_folds,
)
from cobra.oracles import label_oracle

from helpers import brute_ari, brute_closure_relation


class TestAri:
    def test_perfect_agreement(self):
        assert ari([0, 0, 1, 1, 2], [0, 0, 1, 1, 2]) == 1.0

    def test_label_permutation_invariance(self):
        assert ari([0, 0, 1, 1], [1, 1, 0, 0]) == 1.0

    def test_worked_zero_case(self):
        assert ari([0, 0, 1, 1], [0, 0, 0, 1]) == 0.0

    def test_degenerate_single_cluster(self):
        assert ari([0, 0, 0], [0, 0, 0]) == 1.0

    def test_subset_scoring(self):
        pred = [0, 0, 1, 1, 1]
        truth = ["a", "a", "b", "b", "a"]
        assert ari(pred, truth, subset=[0, 1, 2, 3]) == 1.0

    def test_missing_subset_id(self):
        with pytest.raises(LookupError):
            ari([0, 1], [0, 1], subset=[0, 5])

    def test_length_mismatch_without_subset(self):
        with pytest.raises(LookupError):
            ari([0, 1, 2], [0, 1])

    @settings(max_examples=80, deadline=None)
    @given(st.integers(0, 10_000))
    def test_matches_brute_force_pair_counting(self, seed):
        rng = np.random.default_rng(seed)
        n = int(rng.integers(2, 60))
        pred = [int(v) for v in rng.integers(0, rng.integers(1, 6), size=n)]
        truth = [int(v) for v in rng.integers(0, rng.integers(1, 6), size=n)]
        assert ari(pred, truth) == pytest.approx(
            brute_ari(pred, truth, range(n)), abs=1e-12
        )


class TestMakeFolds:
    def test_even_split(self):
        folds = make_folds(10, 5, seed=0)
        assert [len(test) for _, test in folds] == [2] * 5
        covered = sorted(i for _, test in folds for i in test)
        assert covered == list(range(10))

    def test_remainder_distribution(self):
        folds = make_folds(11, 5, seed=1)
        assert sorted(len(test) for _, test in folds) == [2, 2, 2, 2, 3]

    def test_train_complements_test(self):
        for train, test in make_folds(23, 4, seed=5):
            assert sorted(train + test) == list(range(23))
            assert not set(train) & set(test)

    def test_determinism(self):
        assert make_folds(20, 5, seed=9) == make_folds(20, 5, seed=9)

    def test_invalid_k(self):
        with pytest.raises(ValueError):
            make_folds(10, 1, seed=0)
        with pytest.raises(ValueError):
            make_folds(3, 4, seed=0)


def separable_dataset(n_per=20, n_classes=3, seed=4):
    rng = np.random.default_rng(seed)
    centers = np.array([[0.0, 0.0], [60.0, 0.0], [0.0, 60.0], [60.0, 60.0]])
    rows, labels = [], []
    for c in range(n_classes):
        rows.append(centers[c] + rng.normal(0, 1.0, size=(n_per, 2)))
        labels += [f"class_{c}"] * n_per
    return Dataset(np.vstack(rows), tuple(labels))


class TestCrossValidate:
    def test_separable_data_scores_one_everywhere(self):
        d = separable_dataset()
        results = cross_validate(d, n_super=6, k_folds=5, seed=0)
        assert len(results) == 5
        assert all(r.ari_test == 1.0 for r in results)
        assert all(r.n_clusters_found == 3 for r in results)

    def test_protocol_contract(self):
        d = separable_dataset(n_per=12)
        seen = []

        def check(fold_index, train, test, run):
            train_set = set(train)
            for entry in run.query_log:
                assert entry.a in train_set and entry.b in train_set
            assert all(m in train_set for m in run.super_instances.medoids)
            seen.append(fold_index)

        cross_validate(d, n_super=5, k_folds=4, seed=2, on_fold=check)
        assert seen == [0, 1, 2, 3]

    def test_fold_result_invariants(self):
        d = separable_dataset(n_per=10, n_classes=2)
        for r in cross_validate(d, n_super=4, k_folds=3, seed=1):
            assert isinstance(r, FoldResult)
            assert r.ari_test <= 1.0
            assert r.oracle_count >= 0
            assert r.wall_time >= 0.0

    def test_needs_labels(self):
        with pytest.raises(ValueError):
            cross_validate(Dataset(np.zeros((6, 2)) + np.arange(6)[:, None]), 2)


class TestBaselineFull:
    def test_three_points(self):
        d = Dataset(np.array([[0.0], [1.0], [2.0]]), ("a", "a", "b"))
        clustering, count = baseline_full(d, label_oracle(d.labels))
        assert count == 3
        assert clustering.assignment == (0, 0, 1)

    def test_query_count_is_all_pairs(self):
        d = separable_dataset(n_per=8, n_classes=2)
        _, count = baseline_full(d, label_oracle(d.labels))
        assert count == math.comb(d.n, 2)

    def test_perfect_recovery(self):
        d = separable_dataset(n_per=7)
        clustering, _ = baseline_full(d, label_oracle(d.labels))
        assert ari(clustering.assignment, d.labels) == 1.0


class TestBaselineClosure:
    def test_two_label_pairs_closest_first(self):
        # intra-pair gaps are the two smallest distances by construction
        d = Dataset(
            np.array([[0.0], [0.5], [10.0], [10.5]]), ("A", "A", "B", "B")
        )
        # independent simulation: walk pairs closest-first, count the ones
        # the closure cannot answer
        gaps = {}
        for a in range(4):
            for b in range(a + 1, 4):
                gaps[(a, b)] = abs(float(d.features[a, 0] - d.features[b, 0]))
        ordered = sorted(gaps, key=lambda p: (gaps[p], p))
        facts, expected = [], 0
        for a, b in ordered:
            if brute_closure_relation(facts, a, b) is Relation.UNKNOWN:
                expected += 1
                kind = "ml" if d.labels[a] == d.labels[b] else "cl"
                facts.append((kind, a, b))
        clustering, count = baseline_closure(d, label_oracle(d.labels))
        assert count == expected == 3
        assert ari(clustering.assignment, d.labels) == 1.0

    def test_matches_independent_simulation_on_random_data(self):
        d = separable_dataset(n_per=6, n_classes=3, seed=8)
        rng = np.random.default_rng(3)
        x = d.features + rng.normal(0, 0.2, d.features.shape)
        d = Dataset(x, d.labels)
        _, count = baseline_closure(d, label_oracle(d.labels))
        gaps = {}
        for a in range(d.n):
            for b in range(a + 1, d.n):
                gaps[(a, b)] = float(np.linalg.norm(d.features[a] - d.features[b]))
        ordered = sorted(gaps, key=lambda p: (gaps[p], p))
        facts, expected = [], 0
        for a, b in ordered:
            if brute_closure_relation(facts, a, b) is Relation.UNKNOWN:
                expected += 1
                kind = "ml" if d.labels[a] == d.labels[b] else "cl"
                facts.append((kind, a, b))
        assert count == expected

    def test_never_beats_full_baseline_count(self):
        d = separable_dataset(n_per=6, n_classes=2, seed=12)
        _, full_count = baseline_full(d, label_oracle(d.labels))
        for ordering, seed in [("closest_first", None), ("random", 1), ("random", 2)]:
            _, count = baseline_closure(d, label_oracle(d.labels), ordering, seed)
            assert count <= full_count

    def test_random_ordering_deterministic_per_seed(self):
        d = separable_dataset(n_per=5, n_classes=2, seed=6)
        runs = [
            baseline_closure(d, label_oracle(d.labels), "random", seed=7)
            for _ in range(2)
        ]
        assert runs[0][1] == runs[1][1]
        assert runs[0][0] == runs[1][0]

    def test_random_ordering_needs_seed(self):
        d = separable_dataset(n_per=3, n_classes=2)
        with pytest.raises(ValueError):
            baseline_closure(d, label_oracle(d.labels), "random")

    def test_unknown_ordering_rejected(self):
        d = separable_dataset(n_per=3, n_classes=2)
        with pytest.raises(ValueError):
            baseline_closure(d, label_oracle(d.labels), "fastest")

    def test_perfect_recovery_both_orderings(self):
        d = separable_dataset(n_per=5, n_classes=3, seed=10)
        for ordering, seed in [("closest_first", None), ("random", 4)]:
            clustering, _ = baseline_closure(d, label_oracle(d.labels), ordering, seed)
            assert ari(clustering.assignment, d.labels) == 1.0
