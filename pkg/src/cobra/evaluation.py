"""Scoring and protocol reproduction: ARI, constrained folds, baselines.

The cross-validation protocol mirrors how an active clustering method has to
be scored: the whole dataset is clustered, but queries may only touch pairs
of training instances, super-instance representatives must be training
instances, and ARI is computed on the held-out test ids alone.

The two baselines bracket the query-count story: exhaustive pairwise
querying, and pairwise querying that skips every answer the constraint
closure already knows (in a random or closest-first pair order).
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass
from typing import Callable, Optional, Sequence

import numpy as np

from . import kernels
from .constraints import ConstraintStore, Relation
from .core import Clustering, CobraRun, run_cobra
from .dataset import Dataset
from .oracles import label_oracle


@dataclass(frozen=True)
class FoldResult:
    fold_index: int
    ari_test: float
    oracle_count: int
    n_clusters_found: int
    wall_time: float


def _counts(assignment, ids):
    sizes: dict = {}
    for i in ids:
        try:
            key = assignment[i]
        except (KeyError, IndexError):
            raise LookupError(f"id {i} missing from assignment") from None
        sizes[key] = sizes.get(key, 0) + 1
    return sizes


def ari(pred, truth, subset: Optional[Sequence[int]] = None) -> float:
    """Adjusted Rand index between two assignments over the given ids.

    Assignments are anything indexable by id; cluster keys only need to
    support equality.  Exact integer pair counts feed the adjustment formula;
    the degenerate all-one-cluster case scores 1.
    """
    if subset is None:
        if len(pred) != len(truth):
            raise LookupError(
                f"assignments cover {len(pred)} vs {len(truth)} ids; pass a subset"
            )
        ids = range(len(pred))
    else:
        ids = list(subset)
    n = len(ids)
    total = math.comb(n, 2)
    if total == 0:
        return 1.0
    pred_sizes = _counts(pred, ids)
    truth_sizes = _counts(truth, ids)
    joint: dict = {}
    for i in ids:
        key = (pred[i], truth[i])
        joint[key] = joint.get(key, 0) + 1
    index = sum(math.comb(c, 2) for c in joint.values())
    sum_pred = sum(math.comb(c, 2) for c in pred_sizes.values())
    sum_truth = sum(math.comb(c, 2) for c in truth_sizes.values())
    expected = sum_pred * sum_truth / total
    max_index = (sum_pred + sum_truth) / 2
    if max_index == expected:
        return 1.0
    return (index - expected) / (max_index - expected)


def make_folds(n: int, k_folds: int, seed: int) -> list[tuple[list[int], list[int]]]:
    """Shuffled (train ids, test ids) splits with test sizes differing by <= 1."""
    if k_folds < 2 or k_folds > n:
        raise ValueError(f"k_folds must be in [2, {n}], got {k_folds}")
    perm = np.random.default_rng(seed).permutation(n)
    folds = []
    for chunk in np.array_split(perm, k_folds):
        test = sorted(int(i) for i in chunk)
        test_set = set(test)
        train = [i for i in range(n) if i not in test_set]
        folds.append((train, test))
    return folds


def cross_validate(
    data: Dataset,
    n_super: int,
    k_folds: int = 5,
    seed: int = 0,
    on_fold: Optional[Callable[[int, list[int], list[int], CobraRun], None]] = None,
) -> list[FoldResult]:
    """Constrained cross-validation under the label oracle.

    Each fold clusters the full dataset but may only query train-train pairs
    (enforced, not assumed), then scores ARI on the test ids.  Per-fold runs
    use seed + fold_index so folds explore different over-segmentations.
    on_fold, when given, receives (fold_index, train, test, run).
    """
    if data.labels is None:
        raise ValueError("cross_validate needs a labeled dataset")
    base_oracle = label_oracle(data.labels)
    results = []
    for fold_index, (train, test) in enumerate(make_folds(data.n, k_folds, seed)):
        train_set = frozenset(train)

        def guarded(a: int, b: int) -> Relation:
            if a not in train_set or b not in train_set:
                raise RuntimeError(
                    f"query ({a}, {b}) touches a test instance in fold {fold_index}"
                )
            return base_oracle(a, b)

        started = time.perf_counter()
        run = run_cobra(
            data, n_super, guarded, seed=seed + fold_index, train_ids=train
        )
        wall_time = time.perf_counter() - started
        outside = [m for m in run.super_instances.medoids if m not in train_set]
        if outside:
            raise RuntimeError(
                f"fold {fold_index} picked non-training medoids {outside}"
            )
        for entry in run.query_log:
            if entry.a not in train_set or entry.b not in train_set:
                raise RuntimeError(
                    f"fold {fold_index} logged a test-instance pair "
                    f"({entry.a}, {entry.b})"
                )
        results.append(
            FoldResult(
                fold_index=fold_index,
                ari_test=ari(run.clustering.assignment, data.labels, subset=test),
                oracle_count=run.query_log.oracle_count,
                n_clusters_found=run.clustering.n_clusters,
                wall_time=wall_time,
            )
        )
        if on_fold is not None:
            on_fold(fold_index, train, test, run)
    return results


def _components_clustering(store: ConstraintStore, n: int) -> Clustering:
    components = store.components() or [[i] for i in range(n)]
    assignment = [0] * n
    for ci, component in enumerate(components):
        for i in component:
            assignment[i] = ci
    return Clustering(
        tuple(tuple(c) for c in components), tuple(assignment)
    )


def baseline_full(data: Dataset, oracle) -> tuple[Clustering, int]:
    """Query every unordered pair; clusters are the must-link components."""
    store = ConstraintStore()
    count = 0
    for a in range(data.n):
        for b in range(a + 1, data.n):
            answer = oracle(a, b)
            count += 1
            if answer is Relation.MUST_LINK:
                store.add_must_link(a, b, queried=True)
            else:
                store.add_cannot_link(a, b, queried=True)
    return _components_clustering(store, data.n), count


def baseline_closure(
    data: Dataset,
    oracle,
    ordering: str = "closest_first",
    seed: Optional[int] = None,
) -> tuple[Clustering, int]:
    """Walk all pairs, querying only those the closure cannot already answer.

    ordering "closest_first" sorts the pairs once by distance ascending
    (ties by id pair); "random" shuffles them with the given seed.
    """
    n = data.n
    if n < 2:
        return _components_clustering(ConstraintStore(), n), 0
    rows, cols = np.triu_indices(n, k=1)
    if ordering == "closest_first":
        gaps = kernels.sqdist_matrix(data.features, data.features)[rows, cols]
        order = np.lexsort((cols, rows, gaps))
    elif ordering == "random":
        if seed is None:
            raise ValueError("random ordering needs a seed")
        order = np.random.default_rng(seed).permutation(len(rows))
    else:
        raise ValueError(f"unknown ordering {ordering!r}")
    store = ConstraintStore()
    count = 0
    for k in order:
        a, b = int(rows[k]), int(cols[k])
        if store.relation(a, b) is not Relation.UNKNOWN:
            continue
        answer = oracle(a, b)
        count += 1
        if answer is Relation.MUST_LINK:
            store.add_must_link(a, b, queried=True)
        else:
            store.add_cannot_link(a, b, queried=True)
    return _components_clustering(store, n), count
