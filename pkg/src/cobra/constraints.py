"""Must-link / cannot-link bookkeeping with transitivity and entailment.

Must-link components live in a union-find forest; cannot-link edges are kept
between component roots and re-pointed whenever components merge.  A lookup
therefore answers derived constraints with two find() calls and no search:
must-link is component equality, cannot-link is an edge between the roots.
"""

from __future__ import annotations

import enum
from typing import Iterable


class Relation(enum.Enum):
    MUST_LINK = "must-link"
    CANNOT_LINK = "cannot-link"
    UNKNOWN = "unknown"


class InconsistentConstraintError(Exception):
    """A new constraint contradicts what is already known."""


class ConstraintStore:
    def __init__(self):
        self._parent: dict[int, int] = {}
        self._size: dict[int, int] = {}
        self._cl: dict[int, set[int]] = {}
        self._queried: set[tuple[int, int]] = set()

    def _register(self, a: int) -> None:
        if a not in self._parent:
            self._parent[a] = a
            self._size[a] = 1

    def _find(self, a: int) -> int:
        root = a
        while self._parent[root] != root:
            root = self._parent[root]
        while self._parent[a] != root:
            self._parent[a], a = root, self._parent[a]
        return root

    def ids(self) -> Iterable[int]:
        return self._parent.keys()

    @property
    def queried_pairs(self) -> set[tuple[int, int]]:
        return set(self._queried)

    def add_must_link(self, a: int, b: int, queried: bool = False) -> None:
        self._register(a)
        self._register(b)
        if a == b:
            return
        ra, rb = self._find(a), self._find(b)
        if ra != rb:
            if rb in self._cl.get(ra, ()):
                raise InconsistentConstraintError(
                    f"must-link({a},{b}) contradicts a known cannot-link"
                )
            # union by size; ties keep the smaller root id
            if (-self._size[rb], rb) < (-self._size[ra], ra):
                ra, rb = rb, ra
            # rb's component and cannot-link edges fold into ra
            self._parent[rb] = ra
            self._size[ra] += self._size.pop(rb)
            moved = self._cl.pop(rb, set())
            if moved:
                kept = self._cl.setdefault(ra, set())
                kept.update(moved)
                for other in moved:
                    edges = self._cl[other]
                    edges.discard(rb)
                    edges.add(ra)
        if queried:
            self._queried.add((min(a, b), max(a, b)))

    def add_cannot_link(self, a: int, b: int, queried: bool = False) -> None:
        if a == b:
            raise InconsistentConstraintError(f"cannot-link({a},{a}) is impossible")
        self._register(a)
        self._register(b)
        ra, rb = self._find(a), self._find(b)
        if ra == rb:
            raise InconsistentConstraintError(
                f"cannot-link({a},{b}) contradicts a known must-link"
            )
        self._cl.setdefault(ra, set()).add(rb)
        self._cl.setdefault(rb, set()).add(ra)
        if queried:
            self._queried.add((min(a, b), max(a, b)))

    def relation(self, a: int, b: int) -> Relation:
        if a == b:
            return Relation.MUST_LINK
        if a not in self._parent or b not in self._parent:
            return Relation.UNKNOWN
        ra, rb = self._find(a), self._find(b)
        if ra == rb:
            return Relation.MUST_LINK
        if rb in self._cl.get(ra, ()):
            return Relation.CANNOT_LINK
        return Relation.UNKNOWN

    def components(self) -> list[list[int]]:
        """Must-link components as sorted id lists, ordered by smallest member."""
        groups: dict[int, list[int]] = {}
        for a in self._parent:
            groups.setdefault(self._find(a), []).append(a)
        out = [sorted(members) for members in groups.values()]
        out.sort(key=lambda g: g[0])
        return out

    def derived_stats(self) -> dict:
        """Counts of queried pairs and of all pairs decidable without a query."""
        roots: dict[int, int] = {}
        for a in self._parent:
            root = self._find(a)
            roots[root] = roots.get(root, 0) + 1
        ml_pairs = sum(size * (size - 1) // 2 for size in roots.values())
        cl_pairs = 0
        for ra, others in self._cl.items():
            for rb in others:
                if ra < rb:
                    cl_pairs += roots[ra] * roots[rb]
        return {
            "queried": len(self._queried),
            "derivable_pairs": ml_pairs + cl_pairs,
        }
