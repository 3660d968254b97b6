"""Independent reference implementations used to cross-check the package.

Deliberately written with different machinery than the library (BFS instead
of union-find, pair counting instead of contingency sums) so agreement is
meaningful.
"""

from cobra.constraints import Relation


def brute_closure_relation(facts, x, y):
    """Derived relation between x and y given (kind, a, b) facts.

    kind is "ml" or "cl".  Components come from BFS over must-link edges;
    cannot-link holds iff some cl fact connects the two components.
    """
    if x == y:
        return Relation.MUST_LINK
    ids = {i for _, a, b in facts for i in (a, b)}
    if x not in ids or y not in ids:
        return Relation.UNKNOWN
    adj = {i: set() for i in ids}
    for kind, a, b in facts:
        if kind == "ml":
            adj[a].add(b)
            adj[b].add(a)
    comp = {}
    for start in ids:
        if start in comp:
            continue
        stack = [start]
        comp[start] = start
        while stack:
            cur = stack.pop()
            for nxt in adj[cur]:
                if nxt not in comp:
                    comp[nxt] = start
                    stack.append(nxt)
    if comp[x] == comp[y]:
        return Relation.MUST_LINK
    for kind, a, b in facts:
        if kind == "cl" and {comp[a], comp[b]} == {comp[x], comp[y]}:
            return Relation.CANNOT_LINK
    return Relation.UNKNOWN


def brute_closure_table(facts):
    """Batched form of brute_closure_relation for checking many pairs.

    Builds the component map and blocked component-pair set once; returns a
    relation(x, y) function with the same semantics.
    """
    ids = {i for _, a, b in facts for i in (a, b)}
    adj = {i: set() for i in ids}
    for kind, a, b in facts:
        if kind == "ml":
            adj[a].add(b)
            adj[b].add(a)
    comp = {}
    for start in ids:
        if start in comp:
            continue
        stack = [start]
        comp[start] = start
        while stack:
            cur = stack.pop()
            for nxt in adj[cur]:
                if nxt not in comp:
                    comp[nxt] = start
                    stack.append(nxt)
    blocked = {
        frozenset((comp[a], comp[b])) for kind, a, b in facts if kind == "cl"
    }

    def relation(x, y):
        if x == y:
            return Relation.MUST_LINK
        if x not in comp or y not in comp:
            return Relation.UNKNOWN
        if comp[x] == comp[y]:
            return Relation.MUST_LINK
        if frozenset((comp[x], comp[y])) in blocked:
            return Relation.CANNOT_LINK
        return Relation.UNKNOWN

    return relation


def brute_ari(pred, truth, ids):
    """Adjusted Rand index by explicit pair counting over the given ids."""
    ids = list(ids)
    n11 = n10 = n01 = n00 = 0
    for i in range(len(ids)):
        for j in range(i + 1, len(ids)):
            same_pred = pred[ids[i]] == pred[ids[j]]
            same_true = truth[ids[i]] == truth[ids[j]]
            if same_pred and same_true:
                n11 += 1
            elif same_pred:
                n10 += 1
            elif same_true:
                n01 += 1
            else:
                n00 += 1
    total = n11 + n10 + n01 + n00
    if total == 0:
        return 1.0
    a = n11 + n10
    b = n11 + n01
    expected = a * b / total
    max_index = (a + b) / 2
    if max_index == expected:
        return 1.0
    return (n11 - expected) / (max_index - expected)
