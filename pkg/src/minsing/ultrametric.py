"""Helpers for contact matrices viewed as ultrametric trees."""

from __future__ import annotations

from itertools import combinations
from typing import Callable, Mapping, Sequence


def key(i: str, j: str) -> tuple[str, str]:
    return (i, j) if i <= j else (j, i)


def violations(ids: Sequence[str], contact: Callable[[str, str], int]):
    """Yield triples breaking ``c(i,k) >= min(c(i,j), c(j,k))``."""
    for i, j, k in combinations(ids, 3):
        a, b, c = contact(i, j), contact(j, k), contact(i, k)
        # the two smallest values must coincide
        lo = sorted((a, b, c))
        if lo[0] != lo[1]:
            yield (i, j, k)


def first_violation(ids: Sequence[str], contact: Callable[[str, str], int]):
    """A triple breaking ultrametricity, or None; every pair is read once.

    Split a group by the contact with its first member ``r``: those above
    ``r``'s lowest contact ``low`` (with ``r``) and those at ``low``.  Across
    the split every contact must be exactly ``low``, and inside the lower part
    nothing may drop below ``low``.  Then recurse on both parts.
    """
    ids = list(ids)
    n = len(ids)
    m = [[0] * n for _ in range(n)]
    for a, b in combinations(range(n), 2):
        m[a][b] = m[b][a] = contact(ids[a], ids[b])
    bad = matrix_violation(m)
    return None if bad is None else tuple(ids[i] for i in bad)


def matrix_violation(m: Sequence[Sequence[int]]):
    """:func:`first_violation` on a symmetric matrix; returns indices."""
    n = len(m)
    # (members, floor, witness): contacts inside members must be >= floor,
    # witness has contact exactly floor with all of them
    stack = [(list(range(n)), None, None)]
    while stack:
        group, floor, witness = stack.pop()
        if len(group) < 2:
            continue
        r, rest = group[0], group[1:]
        row = m[r]
        low = min(row[j] for j in rest)
        if floor is not None and low < floor:
            j = min(rest, key=lambda j: row[j])
            return (witness, r, j)
        above = [r] + [j for j in rest if row[j] > low]
        below = [j for j in rest if row[j] == low]
        for i in above:
            mi = m[i]
            for j in below:
                if mi[j] != low:
                    return (r, i, j)
        stack.append((above, None, None))
        stack.append((below, low, r))
    return None


def classes_above(ids: Sequence[str], contact: Callable[[str, str], int], level: int):
    """Partition ``ids`` by the relation ``contact > level`` (an equivalence for ultrametrics)."""
    groups: list[list[str]] = []
    for i in ids:
        for grp in groups:
            if contact(grp[0], i) > level:
                grp.append(i)
                break
        else:
            groups.append([i])
    return groups


def signature(labels: Mapping[str, str], contacts: Mapping[tuple[str, str], int]) -> str:
    """Canonical string of the labelled contact tree.

    Two curves are equisingular exactly when their branch types and contact
    trees agree, i.e. when these strings are equal.
    """
    ids = sorted(labels)
    index = {i: a for a, i in enumerate(ids)}
    m = [[0] * len(ids) for _ in ids]
    for (i, j), c in contacts.items():
        m[index[i]][index[j]] = m[index[j]][index[i]] = c

    def canon(group):
        if len(group) == 1:
            return labels[ids[group[0]]]
        low = min(m[group[0]][j] for j in group[1:])  # the global minimum for ultrametrics
        kids, rest = [], group
        while rest:
            row = m[rest[0]]
            kids.append(canon([rest[0]] + [j for j in rest[1:] if row[j] > low]))
            rest = [j for j in rest[1:] if row[j] <= low]
        return f"{low}[{','.join(sorted(kids))}]"

    return canon(list(range(len(ids)))) if ids else "[]"
