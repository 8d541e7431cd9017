"""Exact twin-width of small graphs by exhaustive search.

States are partitions of the vertex set (red edges are a function of the
partition), encoded as sorted tuples of bitmasks.  Sorting is the label
normalisation: two states share a key only if they are the same partition.
"""

from __future__ import annotations

import os
from itertools import combinations

from .graph import Graph

__all__ = [
    "OracleBudgetExceeded",
    "brute_force_tww",
    "brute_force_has_1_sequence_with_last",
    "canonical_key",
    "default_max_n",
]


class OracleBudgetExceeded(RuntimeError):
    """The node-expansion budget ran out before the search finished."""


def default_max_n() -> int:
    return int(os.environ.get("TWW_MAX_ORACLE_N", "10"))


def canonical_key(parts) -> tuple[int, ...]:
    return tuple(sorted(parts))


def _red_degrees(parts: tuple[int, ...], masks: list[int]) -> list[int]:
    k = len(parts)
    any_n = []
    all_n = []
    for p in parts:
        a, b = 0, -1
        q = p
        while q:
            low = q & -q
            m = masks[low.bit_length() - 1]
            a |= m
            b &= m
            q ^= low
        any_n.append(a)
        all_n.append(b)
    deg = [0] * k
    for i in range(k):
        ai, bi = any_n[i], all_n[i]
        for j in range(i + 1, k):
            q = parts[j]
            if q & ai and q & ~bi:
                deg[i] += 1
                deg[j] += 1
    return deg


class _Search:
    def __init__(self, g: Graph, budget: int | None):
        self.masks = g.masks
        self.budget = budget
        self.expanded = 0
        # key -> largest width proven infeasible for the continuation
        self.lower: dict[tuple[int, ...], int] = {}
        self.red_cache: dict[tuple[int, ...], list[int]] = {}

    def reds(self, key):
        r = self.red_cache.get(key)
        if r is None:
            r = _red_degrees(key, self.masks)
            self.red_cache[key] = r
        return r

    def children(self, key):
        out = []
        for i, j in combinations(range(len(key)), 2):
            merged = key[i] | key[j]
            child = canonical_key([p for t, p in enumerate(key) if t != i and t != j] + [merged])
            deg = self.reds(child)
            out.append((max(deg, default=0), sum(deg), child))
        out.sort()
        return out

    def feasible(self, key, d: int) -> bool:
        """Whether the partition ``key`` can be contracted to one part with width <= d."""
        if len(key) <= 1:
            return True
        if self.lower.get(key, -1) >= d:
            return False
        self.expanded += 1
        if self.budget is not None and self.expanded > self.budget:
            raise OracleBudgetExceeded(f"expanded more than {self.budget} states")
        for worst, _, child in self.children(key):
            if worst > d:
                break
            if self.feasible(child, d):
                return True
        self.lower[key] = max(self.lower.get(key, -1), d)
        return False


def brute_force_tww(g: Graph, budget: int | None = None, max_n: int | None = None) -> int:
    """Exact twin-width by iterative deepening over partitions.

    Raises :class:`OracleBudgetExceeded` rather than guessing when ``budget``
    state expansions are not enough.
    """
    limit = default_max_n() if max_n is None else max_n
    if g.n > limit:
        raise ValueError(f"oracle limited to n <= {limit} (got {g.n})")
    if g.n <= 1:
        return 0
    search = _Search(g, budget)
    start = canonical_key(1 << v for v in range(g.n))
    d = 0
    while not search.feasible(start, d):
        d += 1
    return d


def brute_force_has_1_sequence_with_last(g: Graph, s: int, max_n: int | None = None) -> bool:
    """Whether some 1-sequence lets ``s`` be the last vertex to touch a red edge.

    A vertex is touched once its part has positive red degree.  The condition
    fails if any vertex becomes touched strictly after ``s``.  A sequence that
    never creates a red edge satisfies it vacuously.
    """
    limit = default_max_n() if max_n is None else max_n
    if g.n > limit:
        raise ValueError(f"oracle limited to n <= {limit} (got {g.n})")
    if not 0 <= s < g.n:
        raise ValueError(f"vertex {s} out of range")
    if g.n <= 1:
        return True
    masks = g.masks
    sbit = 1 << s
    failed: set[tuple[tuple[int, ...], int]] = set()

    def touched_mask(key, deg):
        t = 0
        for p, dp in zip(key, deg):
            if dp:
                t |= p
        return t

    def go(key, touched) -> bool:
        if len(key) == 1:
            return True
        state = (key, touched)
        if state in failed:
            return False
        for i, j in combinations(range(len(key)), 2):
            child = canonical_key(
                [p for t, p in enumerate(key) if t != i and t != j] + [key[i] | key[j]]
            )
            deg = _red_degrees(child, masks)
            if max(deg, default=0) > 1:
                continue
            new = touched | touched_mask(child, deg)
            if touched & sbit and new != touched:
                continue
            if go(child, new):
                return True
        failed.add(state)
        return False

    return go(canonical_key(1 << v for v in range(g.n)), 0)
