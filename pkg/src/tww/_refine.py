"""Ordered vertex partitioning.

Starting from ``({v}, V - {v})`` the partition is refined until no vertex
splits a class other than its own; the resulting classes (besides ``{v}``)
are the maximal modules not containing ``v``.

In ordered mode, whenever a pivot ``p`` splits a class ``X``, the part of
``X`` adjacent to ``p`` is placed on the side of ``X`` away from ``p``'s
class (with ``complement=True`` the non-adjacent part is).  For a prime
comparability graph and a source ``v`` of a transitive orientation, the
final order is a linear extension of that orientation.

Pivots follow the smaller-half rule: after a split only the smaller part
is re-queued, and the already-processed vertices of the larger part are
checked against the smaller part by scanning the smaller part's
neighbourhoods.  Total work is O(n + m log n).
"""

from __future__ import annotations

from collections import deque


def refine(adj: list[list[int]], start: int, ordered: bool = True, complement: bool = False):
    """Refine ``({start}, rest)`` on the local graph ``adj`` (ids ``0..k-1``).

    Returns ``(order, classes)`` where ``order`` lists vertices left to right
    and ``classes`` lists the final classes in order, each as a list.
    """
    k = len(adj)
    order = [start] + [u for u in range(k) if u != start]
    pos = list(range(k))
    for i, u in enumerate(order):
        pos[u] = i
    cls = [1] * k
    cls[start] = 0
    cstart = [0, 1]
    cend = [1, k]
    pending = [True] * k
    queue = deque(order)
    tasks: list[tuple[int, list[int]]] = []

    def split_by(p: int, targets) -> None:
        pc = cls[p]
        pstart = cstart[pc]
        groups: dict[int, list[int]] = {}
        for y in targets:
            c = cls[y]
            if c != pc:
                g = groups.get(c)
                if g is None:
                    groups[c] = [y]
                else:
                    g.append(y)
        for c, T in groups.items():
            s, e = cstart[c], cend[c]
            t = len(T)
            if t == e - s:
                continue
            if ordered:
                pivot_left = pstart < s
                to_right = pivot_left if not complement else not pivot_left
            else:
                to_right = True
            nc = len(cstart)
            if to_right:
                j = e - 1
                for y in T:
                    py = pos[y]
                    z = order[j]
                    order[j], order[py] = y, z
                    pos[y], pos[z] = j, py
                    j -= 1
                cstart.append(e - t)
                cend.append(e)
                cend[c] = e - t
            else:
                j = s
                for y in T:
                    py = pos[y]
                    z = order[j]
                    order[j], order[py] = y, z
                    pos[y], pos[z] = j, py
                    j += 1
                cstart.append(s)
                cend.append(s + t)
                cstart[c] = s + t
            for y in T:
                cls[y] = nc
            rest = (e - s) - t
            if t <= rest:
                small, large = nc, c
            else:
                small, large = c, nc
            small_members = order[cstart[small]:cend[small]]
            for y in small_members:
                if not pending[y]:
                    pending[y] = True
                    queue.append(y)
            # processed vertices of the larger part never looked at the smaller part
            counts: dict[int, list[int]] = {}
            for u in small_members:
                for y in adj[u]:
                    if cls[y] == large and not pending[y]:
                        h = counts.get(y)
                        if h is None:
                            counts[y] = [u]
                        else:
                            h.append(u)
            size = len(small_members)
            for y, hits in counts.items():
                if len(hits) < size:
                    tasks.append((y, hits))

    while tasks or queue:
        if len(cstart) == k:
            # all classes are singletons: nothing left to split
            break
        if tasks:
            y, hits = tasks.pop()
            split_by(y, hits)
            continue
        p = queue.popleft()
        pending[p] = False
        split_by(p, adj[p])

    classes = [order[cstart[c]:cend[c]] for c in sorted(range(len(cstart)), key=lambda c: cstart[c])]
    return order, classes
