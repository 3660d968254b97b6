"""Super-instance construction: K-means over-clustering plus medoids.

The clustering that seeds the merge phase is deliberately plain K-means:
k-means++ seeding, Lloyd iterations until assignments stop changing (capped),
and deterministic repair of empty clusters.  Every random draw comes from one
seeded generator, so a (data, k, seed) triple always yields the same split.

Each super-instance is represented by its medoid, the member minimizing the
summed distance to all members.  When a train/test split is in play, medoid
candidates are restricted to training members, and groups containing no
training instance are folded into the nearest training-bearing group by
centroid distance before medoids are chosen.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

import numpy as np

from . import kernels
from .dataset import Dataset

MAX_LLOYD_ITERATIONS = 300


def _plusplus_centers(x: np.ndarray, k: int, rng: np.random.Generator) -> np.ndarray:
    n = x.shape[0]
    centers = np.empty((k, x.shape[1]), dtype=np.float64)
    centers[0] = x[int(rng.integers(n))]
    if k == 1:
        return centers
    closest = kernels.sqdist_to_point(x, centers[0])
    for j in range(1, k):
        total = float(closest.sum())
        if total > 0.0:
            pick = int(rng.choice(n, p=closest / total))
        else:
            # every point coincides with a chosen center
            pick = int(rng.integers(n))
        centers[j] = x[pick]
        np.minimum(closest, kernels.sqdist_to_point(x, centers[j]), out=closest)
    return centers


def _repair_empty(x: np.ndarray, labels: np.ndarray, centers: np.ndarray, k: int) -> np.ndarray:
    counts = np.bincount(labels, minlength=k)
    empty = np.flatnonzero(counts == 0)
    if empty.size == 0:
        return labels
    labels = labels.copy()
    own = ((x - centers[labels]) ** 2).sum(axis=1)
    for j in empty:
        # steal the point farthest from its center, never emptying a cluster
        eligible = counts[labels] >= 2
        scores = np.where(eligible, own, -1.0)
        donor = int(np.argmax(scores))
        if scores[donor] < 0.0:
            raise ValueError("cannot repair empty cluster: no donor available")
        counts[labels[donor]] -= 1
        labels[donor] = j
        counts[j] = 1
        own[donor] = 0.0
    return labels


def kmeans(data: Dataset, k: int, seed: int) -> list[list[int]]:
    """Partition instance ids into k non-empty groups (sorted id lists)."""
    if not 1 <= k <= data.n:
        raise ValueError(f"k must be in [1, {data.n}], got {k}")
    x = data.features
    rng = np.random.default_rng(seed)
    centers = _plusplus_centers(x, k, rng)
    labels = None
    for _ in range(MAX_LLOYD_ITERATIONS):
        new_labels = _repair_empty(x, kernels.assign_nearest(x, centers), centers, k)
        if labels is not None and np.array_equal(new_labels, labels):
            break
        labels = new_labels
        sums = np.zeros((k, x.shape[1]), dtype=np.float64)
        np.add.at(sums, labels, x)
        centers = sums / np.bincount(labels, minlength=k)[:, None]
    groups = [[] for _ in range(k)]
    for i, lab in enumerate(labels):
        groups[int(lab)].append(i)
    return groups


def medoid(group: Iterable[int], data: Dataset, candidates: Optional[Iterable[int]] = None) -> int:
    """The group member minimizing summed distance to all members.

    candidates, when given, restricts which members may be chosen.  Ties go
    to the smallest id.
    """
    members = np.asarray(sorted(group), dtype=np.int64)
    if members.size == 0:
        raise ValueError("medoid of an empty group")
    if candidates is None:
        eligible = members
    else:
        eligible = np.asarray(sorted(set(group) & set(candidates)), dtype=np.int64)
        if eligible.size == 0:
            raise ValueError("no eligible medoid candidate in group")
    costs = kernels.dist_sums(data.features, eligible, members)
    return int(eligible[int(np.argmin(costs))])


@dataclass(frozen=True)
class SuperInstanceSet:
    """A partition of instance ids into groups, each with a medoid."""

    groups: tuple[tuple[int, ...], ...]
    medoids: tuple[int, ...]

    def __post_init__(self):
        if len(self.groups) != len(self.medoids):
            raise ValueError("one medoid per group required")
        seen = set()
        for group, med in zip(self.groups, self.medoids):
            if not group:
                raise ValueError("empty super-instance group")
            if med not in group:
                raise ValueError(f"medoid {med} outside its group")
            overlap = seen.intersection(group)
            if overlap:
                raise ValueError(f"instance {min(overlap)} in two groups")
            seen.update(group)

    @property
    def n_super(self) -> int:
        return len(self.groups)

    def membership(self, n: int) -> np.ndarray:
        """Array mapping instance id -> group index (ids 0..n-1 must be covered)."""
        out = np.full(n, -1, dtype=np.int64)
        for gi, group in enumerate(self.groups):
            out[list(group)] = gi
        if (out < 0).any():
            raise ValueError("membership asked for ids outside the partition")
        return out


def build_super_instances(
    data: Dataset,
    n_super: int,
    seed: int,
    train_ids: Optional[Sequence[int]] = None,
) -> SuperInstanceSet:
    """Over-cluster the dataset and pick a representative per group.

    train_ids, when given, marks the only instances allowed to represent a
    group; groups with no training member are merged into the training-
    bearing group with the nearest centroid (distances taken between the
    centroids as they were before any merging).
    """
    groups = kmeans(data, n_super, seed)
    if train_ids is not None:
        train = set(int(i) for i in train_ids)
        if not train:
            raise ValueError("train_ids is empty")
        groups = _fold_trainless_groups(data.features, groups, train)
        medoids = tuple(medoid(g, data, train) for g in groups)
    else:
        medoids = tuple(medoid(g, data) for g in groups)
    return SuperInstanceSet(tuple(tuple(g) for g in groups), medoids)


def _fold_trainless_groups(x: np.ndarray, groups: list[list[int]], train: set) -> list[list[int]]:
    centroids = np.stack([x[g].mean(axis=0) for g in groups])
    has_train = [bool(train.intersection(g)) for g in groups]
    targets = [gi for gi, ok in enumerate(has_train) if ok]
    if not targets:
        raise ValueError("no group contains a training instance")
    merged = [list(g) for g in groups]
    for gi, ok in enumerate(has_train):
        if ok:
            continue
        d = kernels.sqdist_to_point(centroids[targets], centroids[gi])
        merged[targets[int(np.argmin(d))]].extend(merged[gi])
        merged[gi] = []
    return [sorted(g) for g in merged if g]
