"""The merge phase: query-driven bottom-up clustering of super-instances.

Every super-instance starts as its own cluster.  Each pass sorts the live
cluster pairs by single-linkage distance over their representatives, walks
them in order, and asks the oracle about the closest representative pair.
A must-link merges the two clusters and restarts the pass; a cannot-link
blocks the pair and the pass continues.  The run ends when a full pass makes
no merge.

The constraint store is consulted before every question, so an answer that
is already derivable (transitivity or entailment) never costs a query; such
entries are logged with source="closure".  Candidate pairs with a recorded
cannot-link between any of their representatives are skipped outright.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Optional, Sequence

import numpy as np

from . import kernels
from .constraints import ConstraintStore, Relation
from .dataset import Dataset
from .superinstances import SuperInstanceSet, build_super_instances

Oracle = Callable[[int, int], Relation]
ProgressFn = Callable[[int, int], None]


@dataclass(frozen=True)
class Clustering:
    """Final grouping of super-instances, plus the induced instance assignment."""

    clusters: tuple[tuple[int, ...], ...]
    assignment: tuple[int, ...]

    def __post_init__(self):
        if not self.clusters:
            raise ValueError("a clustering needs at least one cluster")
        members = sorted(si for cluster in self.clusters for si in cluster)
        if members != list(range(len(members))):
            raise ValueError("clusters must partition the super-instance ids")

    @property
    def n_clusters(self) -> int:
        return len(self.clusters)


@dataclass(frozen=True)
class QueryEntry:
    a: int
    b: int
    answer: Relation
    source: str


class QueryLog:
    """Ordered record of examined pairs; oracle entries are never repeated."""

    def __init__(self):
        self.entries: list[QueryEntry] = []
        self._oracle_pairs: set[tuple[int, int]] = set()

    def append(self, a: int, b: int, answer: Relation, source: str) -> None:
        if source not in ("oracle", "closure"):
            raise ValueError(f"unknown source {source!r}")
        if source == "oracle":
            key = (min(a, b), max(a, b))
            if key in self._oracle_pairs:
                raise ValueError(f"pair {key} already spent an oracle query")
            self._oracle_pairs.add(key)
        self.entries.append(QueryEntry(a, b, answer, source))

    @property
    def oracle_count(self) -> int:
        return len(self._oracle_pairs)

    def __len__(self) -> int:
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)


@dataclass(frozen=True)
class CobraRun:
    """Everything a finished run produced."""

    clustering: Clustering
    query_log: QueryLog
    store: ConstraintStore
    super_instances: SuperInstanceSet


def query_bounds(n_super: int, n_clusters: int) -> tuple[int, int]:
    """Expected-case lower and worst-case upper query counts.

    lower assumes each merge costs one query and distinct final clusters get
    separated once per cluster pair; upper is all representative pairs.
    """
    if n_clusters < 1 or n_super < n_clusters:
        raise ValueError(
            f"need 1 <= n_clusters <= n_super, got ({n_super}, {n_clusters})"
        )
    lower = n_super - n_clusters + math.comb(n_clusters, 2)
    upper = math.comb(n_super, 2)
    return lower, upper


def cluster_distance(c1, c2, positions) -> float:
    """Single-linkage distance: min Euclidean distance over representative pairs.

    positions must be indexable by the representative ids in c1/c2 (e.g. the
    full feature matrix indexed by instance id).
    """
    a = sorted(c1)
    b = sorted(c2)
    if not a or not b:
        raise ValueError("cluster_distance of an empty cluster")
    return kernels.closest_cross_pair(positions, a, b)[2]


def closest_rep_pair(c1, c2, positions) -> tuple[int, int]:
    """The representative pair achieving cluster_distance.

    Ties break to the lexicographically smallest (id from c1, id from c2).
    """
    a = sorted(c1)
    b = sorted(c2)
    if not a or not b:
        raise ValueError("closest_rep_pair of an empty cluster")
    ra, rb, _ = kernels.closest_cross_pair(positions, a, b)
    return ra, rb


def run_cobra(
    data: Dataset,
    n_super: int,
    oracle: Oracle,
    seed: int,
    train_ids: Optional[Sequence[int]] = None,
    super_instances: Optional[SuperInstanceSet] = None,
    progress: Optional[ProgressFn] = None,
) -> CobraRun:
    """Cluster by over-segmenting and merging under oracle supervision.

    progress, when given, is called as progress(n_clusters, oracle_count)
    right before each oracle question.  A prebuilt super_instances set skips
    the K-means step (the interactive service uses this).
    """
    if super_instances is None:
        super_instances = build_super_instances(data, n_super, seed, train_ids)
    store = ConstraintStore()
    log = QueryLog()
    final_groups = _merge_loop(
        data.features, super_instances, store, log, oracle, progress
    )
    membership = super_instances.membership(data.n)
    si_to_cluster = {}
    for ci, cluster in enumerate(final_groups):
        for si in cluster:
            si_to_cluster[si] = ci
    assignment = tuple(int(si_to_cluster[int(gi)]) for gi in membership)
    clustering = Clustering(tuple(tuple(c) for c in final_groups), assignment)
    return CobraRun(clustering, log, store, super_instances)


def _merge_loop(
    features: np.ndarray,
    si: SuperInstanceSet,
    store: ConstraintStore,
    log: QueryLog,
    oracle: Oracle,
    progress: Optional[ProgressFn],
) -> list[list[int]]:
    """Run the merge passes; returns clusters as sorted super-instance-id lists.

    Internally rows are representative slots ordered by medoid id, which makes
    every first-minimum scan equal the lexicographic-smallest-id tie-break.
    """
    medoids = np.asarray(si.medoids, dtype=np.int64)
    order = np.argsort(medoids)
    rep_ids = medoids[order]
    n_rep = len(rep_ids)
    dist = np.sqrt(kernels.sqdist_matrix(features[rep_ids], features[rep_ids]))

    members: list[list[int]] = [[r] for r in range(n_rep)]
    alive = [True] * n_rep
    linkage = dist.copy()
    blocked = np.zeros((n_rep, n_rep), dtype=bool)

    merged_any = True
    while merged_any:
        merged_any = False
        live = [i for i in range(n_rep) if alive[i]]
        candidates = []
        for pos, i in enumerate(live):
            for j in live[pos + 1 :]:
                if not blocked[i, j]:
                    candidates.append(
                        (linkage[i, j], int(rep_ids[i]), int(rep_ids[j]), i, j)
                    )
        candidates.sort()
        for _, _, _, i, j in candidates:
            sub = dist[np.ix_(members[i], members[j])]
            flat = int(np.argmin(sub))
            r, c = divmod(flat, sub.shape[1])
            id_a = int(rep_ids[members[i][r]])
            id_b = int(rep_ids[members[j][c]])
            known = store.relation(id_a, id_b)
            if known is Relation.UNKNOWN:
                if progress is not None:
                    progress(sum(alive), log.oracle_count)
                answer = oracle(id_a, id_b)
                if answer not in (Relation.MUST_LINK, Relation.CANNOT_LINK):
                    raise ValueError(f"oracle returned {answer!r}")
                log.append(id_a, id_b, answer, source="oracle")
                if answer is Relation.MUST_LINK:
                    store.add_must_link(id_a, id_b, queried=True)
                else:
                    store.add_cannot_link(id_a, id_b, queried=True)
            else:
                answer = known
                log.append(id_a, id_b, answer, source="closure")
            if answer is Relation.MUST_LINK:
                members[i] = sorted(members[i] + members[j])
                alive[j] = False
                np.minimum(linkage[i], linkage[j], out=linkage[i])
                linkage[:, i] = linkage[i]
                blocked[i] |= blocked[j]
                blocked[:, i] = blocked[i]
                merged_any = True
                break
            blocked[i, j] = blocked[j, i] = True

    final = [
        sorted(int(order[r]) for r in members[i]) for i in range(n_rep) if alive[i]
    ]
    final.sort(key=lambda cluster: cluster[0])
    return final
