"""Realisers of permutation graphs.

A realiser is a pair of linear orders ``(sigma, tau)`` on the vertices; two
vertices are adjacent exactly when the orders disagree on them.  Positions
are 1-based throughout.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import permutations
from typing import Iterable, NamedTuple

import numpy as np

from ._refine import refine
from .graph import ContractionSequence, Graph, PreconditionError, verify_sequence
from .modular import PARALLEL, PRIME, SERIES, is_module, modular_decomposition

__all__ = [
    "Realiser",
    "IntervalRef",
    "Segment",
    "graph_from_realiser",
    "compute_realiser",
    "prime_realiser",
    "extremal_vertices",
    "extremal_list",
    "is_common_interval",
    "is_common_interval_module",
    "build_realiser_from_sequence",
    "sequence_interval_violations",
    "diagram_layout",
    "realises",
    "count_inversions",
]

# prime quotients up to this size fall back to an exact forcing-closure
# orientation if the refinement-based one does not verify
EXACT_FALLBACK_LIMIT = 300


@dataclass(frozen=True)
class Realiser:
    """``sigma[v]`` and ``tau[v]`` are the 1-based positions of vertex ``v``."""

    sigma: tuple[int, ...]
    tau: tuple[int, ...]

    def __post_init__(self):
        n = len(self.sigma)
        if len(self.tau) != n:
            raise ValueError("sigma and tau must have the same length")
        for name, p in (("sigma", self.sigma), ("tau", self.tau)):
            if sorted(p) != list(range(1, n + 1)):
                raise ValueError(f"{name} is not a bijection onto 1..{n}")

    @classmethod
    def from_orders(cls, sigma_order: Iterable[int], tau_order: Iterable[int]) -> "Realiser":
        """Build from vertex sequences listed left to right."""
        so, to = list(sigma_order), list(tau_order)
        sigma = [0] * len(so)
        tau = [0] * len(to)
        for i, v in enumerate(so):
            sigma[v] = i + 1
        for i, v in enumerate(to):
            tau[v] = i + 1
        return cls(tuple(sigma), tuple(tau))

    @property
    def n(self) -> int:
        return len(self.sigma)

    def order(self, which: str) -> list[int]:
        pos = self.sigma if which == "sigma" else self.tau
        out = [0] * self.n
        for v, p in enumerate(pos):
            out[p - 1] = v
        return out

    @property
    def sigma_order(self) -> list[int]:
        return self.order("sigma")

    @property
    def tau_order(self) -> list[int]:
        return self.order("tau")

    def adjacent(self, u: int, v: int) -> bool:
        return (self.sigma[u] - self.sigma[v]) * (self.tau[u] - self.tau[v]) < 0

    def swapped(self) -> "Realiser":
        return Realiser(self.tau, self.sigma)

    def reversed(self) -> "Realiser":
        n = self.n + 1
        return Realiser(tuple(n - p for p in self.sigma), tuple(n - p for p in self.tau))

    def complement(self) -> "Realiser":
        """Reverse ``tau``: a realiser of the complement graph."""
        n = self.n + 1
        return Realiser(self.sigma, tuple(n - p for p in self.tau))

    def restrict(self, verts: Iterable[int]) -> tuple["Realiser", list[int]]:
        """Realiser of the induced subgraph on ``verts`` (re-indexed by sorted id)."""
        vs = sorted(verts)
        idx = {v: i for i, v in enumerate(vs)}
        so = [idx[v] for v in self.sigma_order if v in idx]
        to = [idx[v] for v in self.tau_order if v in idx]
        return Realiser.from_orders(so, to), vs


class IntervalRef(NamedTuple):
    order: str
    lo: int
    hi: int


class Segment(NamedTuple):
    vertex: int
    top_x: int
    bottom_x: int


def graph_from_realiser(r: Realiser) -> Graph:
    """Inversion graph of the realiser (quadratic pair scan)."""
    n = r.n
    if n == 0:
        return Graph(0)
    s = np.asarray(r.sigma)
    t = np.asarray(r.tau)
    inv = (s[:, None] - s[None, :]) * (t[:, None] - t[None, :]) < 0
    adj = [np.flatnonzero(inv[v]).tolist() for v in range(n)]
    return Graph.from_adjacency(adj)


def count_inversions(perm) -> int:
    """Number of inversions of a sequence of distinct integers, O(n log^2 n)."""
    n = len(perm)
    if n < 2:
        return 0
    if n <= 64:
        return sum(1 for i in range(n) for j in range(i + 1, n) if perm[i] > perm[j])
    a = np.asarray(perm, dtype=np.int64)
    a = a - a.min()
    big = int(a.max()) + 1
    total = 0
    width = 1
    idx = np.arange(n)
    while width < n:
        block = idx // (2 * width)
        in_right = (idx // width) % 2 == 1
        keys = block * big + a
        left_keys = keys[~in_right]
        left_block = block[~in_right]
        ends = np.searchsorted(left_block, block[in_right], side="right")
        le = np.searchsorted(left_keys, keys[in_right], side="right")
        total += int((ends - le).sum())
        order = np.argsort(keys, kind="stable")
        a = a[order]
        width *= 2
    return total


def realises(g: Graph, r: Realiser) -> bool:
    """Exact check that ``r`` realises ``g`` in O(n log^2 n + m)."""
    if r.n != g.n:
        return False
    s, t = r.sigma, r.tau
    for u in range(g.n):
        su, tu = s[u], t[u]
        for v in g.adj[u]:
            if (su - s[v]) * (tu - t[v]) > 0:
                return False
    seq = [0] * g.n
    for v in range(g.n):
        seq[s[v] - 1] = t[v]
    return count_inversions(seq) == g.m


def _positions_from_orientations(adj: list[list[int]], lp: list[int], lq: list[int]):
    """Combine linear extensions of orientations of G and its complement."""
    k = len(adj)
    sigma = [0] * k
    tau = [0] * k
    for u in range(k):
        a = lq[u]
        b = lq[u]
        pu, qu = lp[u], lq[u]
        for w in adj[u]:
            below_q = lq[w] < qu
            if lp[w] < pu:
                a += 1 - below_q
                b -= below_q
            else:
                a -= below_q
                b += 1 - below_q
        sigma[u] = a + 1
        tau[u] = b + 1
    return sigma, tau


def _valid_positions(sigma, tau) -> bool:
    k = len(sigma)
    return len(set(sigma)) == k and len(set(tau)) == k and min(sigma, default=1) == 1 and max(sigma, default=0) == k and min(tau, default=1) == 1 and max(tau, default=0) == k


def _orientation_positions(adj, start, complement):
    order, _ = refine(adj, start, ordered=True, complement=complement)
    pos = [0] * len(adj)
    for i, v in enumerate(order):
        pos[v] = i
    return order, pos


def _exact_orientation(adj: list[list[int]], complement: bool) -> list[int] | None:
    """Linear extension of the transitive orientation of a prime graph, or None."""
    k = len(adj)
    nb = [set(a) for a in adj]
    if complement:
        nb = [set(range(k)) - nb[u] - {u} for u in range(k)]
    edges = [(u, v) for u in range(k) for v in nb[u] if u < v]
    if not edges:
        return list(range(k))
    orient: dict[tuple[int, int], bool] = {}

    def key(a, b):
        return (a, b) if a < b else (b, a)

    def set_dir(a, b, stack):
        kk = key(a, b)
        want = a < b
        have = orient.get(kk)
        if have is None:
            orient[kk] = want
            stack.append((a, b))
            return True
        return have == want

    stack: list[tuple[int, int]] = []
    set_dir(edges[0][0], edges[0][1], stack)
    while stack:
        a, b = stack.pop()
        # a -> b forces a -> c for c adjacent to a, not to b; and c -> b for c adjacent to b, not to a
        for c in nb[a]:
            if c != b and c not in nb[b]:
                if not set_dir(a, c, stack):
                    return None
        for c in nb[b]:
            if c != a and c not in nb[a]:
                if not set_dir(c, b, stack):
                    return None
    if len(orient) != len(edges):
        return None
    succ = [set() for _ in range(k)]
    indeg = [0] * k
    for (a, b), fwd in orient.items():
        x, y = (a, b) if fwd else (b, a)
        succ[x].add(y)
        indeg[y] += 1
    # transitivity
    for x in range(k):
        for y in succ[x]:
            if not succ[y] <= succ[x]:
                return None
    order = []
    ready = [u for u in range(k) if indeg[u] == 0]
    while ready:
        u = ready.pop()
        order.append(u)
        for y in succ[u]:
            indeg[y] -= 1
            if indeg[y] == 0:
                ready.append(y)
    if len(order) != k:
        return None
    pos = [0] * k
    for i, v in enumerate(order):
        pos[v] = i
    return pos


def prime_realiser(q: Graph, allow_exact: bool = True) -> Realiser | None:
    """Realiser of a prime graph, or ``None`` if it is not a permutation graph.

    Orientations of the graph and of its complement come from vertex
    partitioning started at a source found by a first refinement pass; the
    combined orders are verified exactly before being returned.
    """
    k = q.n
    if k <= 1:
        return Realiser.from_orders(range(k), range(k))
    adj = [sorted(a) for a in q.adj]
    first_p, _ = _orientation_positions(adj, 0, False)
    first_q, _ = _orientation_positions(adj, 0, True)
    for vp in (first_p[-1], first_p[0]):
        _, lp = _orientation_positions(adj, vp, False)
        for vq in (first_q[-1], first_q[0]):
            _, lq = _orientation_positions(adj, vq, True)
            sigma, tau = _positions_from_orientations(adj, lp, lq)
            if _valid_positions(sigma, tau):
                r = Realiser(tuple(sigma), tuple(tau))
                if realises(q, r):
                    return r
    if not allow_exact or k > EXACT_FALLBACK_LIMIT:
        return None
    lp = _exact_orientation(adj, False)
    lq = _exact_orientation(adj, True)
    if lp is None or lq is None:
        return None
    sigma, tau = _positions_from_orientations(adj, lp, lq)
    if not _valid_positions(sigma, tau):
        return None
    r = Realiser(tuple(sigma), tuple(tau))
    return r if realises(q, r) else None


def compute_realiser(g: Graph, tree=None) -> Realiser | None:
    """Realiser of ``g`` or ``None`` when ``g`` is not a permutation graph.

    Degenerate nodes are realised directly, prime quotients by
    :func:`prime_realiser`, and children substituted as blocks.  The result
    is always checked against ``g`` before it is returned.
    """
    if g.n == 0:
        return Realiser((), ())
    t = modular_decomposition(g) if tree is None else tree
    orders: dict[int, tuple[list[int], list[int]]] = {}
    stack = [(t, False)]
    while stack:
        node, expanded = stack.pop()
        if node.is_leaf:
            orders[id(node)] = ([node.vertex], [node.vertex])
            continue
        if not expanded:
            stack.append((node, True))
            stack.extend((c, False) for c in node.children)
            continue
        parts = [orders.pop(id(c)) for c in node.children]
        if node.kind == SERIES:
            so = [v for s_, _ in parts for v in s_]
            to = [v for _, t_ in reversed(parts) for v in t_]
        elif node.kind == PARALLEL:
            so = [v for s_, _ in parts for v in s_]
            to = [v for _, t_ in parts for v in t_]
        else:
            rq = prime_realiser(node.quotient)
            if rq is None:
                return None
            so = [v for i in rq.sigma_order for v in parts[i][0]]
            to = [v for i in rq.tau_order for v in parts[i][1]]
        orders[id(node)] = (so, to)
    so, to = orders[id(t)]
    r = Realiser.from_orders(so, to)
    if not realises(g, r):
        raise AssertionError("internal error: composed realiser does not round-trip")
    return r


def extremal_list(r: Realiser) -> list[int]:
    """Distinct vertices at the ends of sigma then tau, in that order."""
    if r.n == 0:
        return []
    so, to = r.sigma_order, r.tau_order
    out: list[int] = []
    for v in (so[0], so[-1], to[0], to[-1]):
        if v not in out:
            out.append(v)
    return out


def extremal_vertices(r: Realiser) -> set[int]:
    return set(extremal_list(r))


def _is_interval(pos, s) -> bool:
    ps = [pos[v] for v in s]
    return max(ps) - min(ps) + 1 == len(ps)


def is_common_interval(r: Realiser, s) -> bool:
    s = list(set(s))
    if not s:
        raise PreconditionError("empty set")
    return _is_interval(r.sigma, s) and _is_interval(r.tau, s)


def is_common_interval_module(g: Graph, r: Realiser, s, check: bool = False) -> bool:
    """Whether ``s`` is a common interval; with ``check`` also assert it is a module."""
    result = is_common_interval(r, s)
    if result and check:
        assert is_module(g, s), f"common interval {sorted(s)} is not a module"
    return result


def _interval_either(r: Realiser, s) -> bool:
    return _is_interval(r.sigma, s) or _is_interval(r.tau, s)


def _homogeneous(g: Graph, a, b) -> str:
    """'black', 'none' or 'red' for the bipartite relation between ``a`` and ``b``."""
    total = len(a) * len(b)
    hits = sum(len(g.adj[x] & b) for x in a)
    if hits == total:
        return "black"
    if hits == 0:
        return "none"
    return "red"


def _stages(n0: int, steps) -> list[list[frozenset]]:
    """Partition of the original vertices before each step and after the last."""
    parts = {v: frozenset([v]) for v in range(n0)}
    out = [list(parts.values())]
    for k, (u, v) in enumerate(steps):
        parts[n0 + k] = parts.pop(u) | parts.pop(v)
        out.append(list(parts.values()))
    return out


def sequence_interval_violations(g: Graph, seq: ContractionSequence, r: Realiser) -> list[str]:
    """Check the two interval properties of a realiser against every trigraph.

    (a) every part is an interval of sigma or of tau;
    (b) for a red pair, the union is an interval of one order and each part
    is an interval of the other.
    """
    problems = []
    for i, parts in enumerate(_stages(g.n, seq.steps)):
        for p in parts:
            if not _interval_either(r, p):
                problems.append(f"stage {i}: part {sorted(p)} is not an interval")
        for a_i in range(len(parts)):
            for b_i in range(a_i + 1, len(parts)):
                a, b = parts[a_i], parts[b_i]
                if _homogeneous(g, a, set(b)) != "red":
                    continue
                u = a | b
                ok = (
                    _is_interval(r.sigma, u) and _is_interval(r.tau, a) and _is_interval(r.tau, b)
                ) or (
                    _is_interval(r.tau, u) and _is_interval(r.sigma, a) and _is_interval(r.sigma, b)
                )
                if not ok:
                    problems.append(f"stage {i}: red pair {sorted(a)} / {sorted(b)} breaks interval layout")
    return problems


def _restricted_merges(steps_parts: list[tuple[frozenset, frozenset]], u: frozenset):
    out = []
    for a, b in steps_parts:
        a2, b2 = a & u, b & u
        if a2 and b2:
            out.append((a2, b2))
    return out


def _base_realiser(g: Graph, verts: list[int], merges) -> tuple[list[int], list[int]]:
    """Exhaustive choice for at most three vertices."""
    for so in permutations(verts):
        for to in permutations(verts):
            sp = {v: i for i, v in enumerate(so)}
            tp = {v: i for i, v in enumerate(to)}
            good = all(
                ((sp[a] - sp[b]) * (tp[a] - tp[b]) < 0) == g.has_edge(a, b)
                for i, a in enumerate(verts)
                for b in verts[i + 1:]
            )
            if not good:
                continue
            if all(_small_interval(sp, tp, x | y) for x, y in merges):
                return list(so), list(to)
    raise AssertionError("no realiser for a graph on at most 3 vertices")


def _small_interval(sp, tp, s) -> bool:
    def itv(pos):
        ps = [pos[v] for v in s]
        return max(ps) - min(ps) + 1 == len(ps)

    return itv(sp) or itv(tp)


def _reblock(g: Graph, s1, t1, first, second):
    """Reorder two mutually homogeneous blocks so ``first`` leads in sigma."""
    rel = _homogeneous(g, first, set(second))
    if rel == "red":
        raise AssertionError("red pair that is not laid out as intervals")
    sf = [v for v in s1 if v in first]
    ss = [v for v in s1 if v in second]
    tf = [v for v in t1 if v in first]
    ts = [v for v in t1 if v in second]
    return sf + ss, (ts + tf if rel == "black" else tf + ts)


def _common_intervals(g: Graph, s1, t1, a_side, b_side):
    """Make both sides intervals of sigma, swapping or re-blocking if needed."""
    for so, to in ((s1, t1), (t1, s1)):
        sp = {v: i for i, v in enumerate(so)}
        if _is_interval(sp, a_side) and _is_interval(sp, b_side):
            return so, to
    return _reblock(g, s1, t1, a_side, b_side)


def _put_at_end(g: Graph, s1, t1, x_part, other):
    """Arrange for ``x_part`` to be a prefix or suffix of sigma."""
    for so, to in ((s1, t1), (t1, s1)):
        k = len(x_part)
        if set(so[:k]) == x_part or set(so[-k:]) == x_part:
            return so, to
    return _reblock(g, s1, t1, x_part, other)


def build_realiser_from_sequence(g: Graph, seq: ContractionSequence) -> Realiser:
    """Realiser built by induction along a 1-contraction sequence.

    At the three-part stage a part with no red edge is split off as a module
    ``M``; the rest and ``M`` are realised recursively and recombined by
    concatenation depending on whether ``M`` is universal, isolated, or sees
    exactly one of the two remaining parts.
    """
    report = verify_sequence(g, seq, 1)
    if not report.ok or not report.complete:
        raise PreconditionError("sequence is not a complete 1-contraction sequence")
    n0 = g.n
    parts = {v: frozenset([v]) for v in range(n0)}
    merges = []
    for k, (u, v) in enumerate(seq.steps):
        merges.append((parts[u], parts[v]))
        parts[n0 + k] = parts.pop(u) | parts.pop(v)

    def realise(u: frozenset) -> tuple[list[int], list[int]]:
        mine = _restricted_merges(merges, u)
        verts = sorted(u)
        if len(verts) <= 3:
            return _base_realiser(g, verts, mine)
        cur = {v: frozenset([v]) for v in verts}
        for a, b in mine[: len(verts) - 3]:
            ra = next(iter(a))
            rb = next(iter(b))
            pa, pb = cur[ra], cur[rb]
            merged = pa | pb
            for x in merged:
                cur[x] = merged
        three = list({id(p): p for p in cur.values()}.values())
        three.sort(key=min)
        reds = [
            (i, j)
            for i in range(3)
            for j in range(i + 1, 3)
            if _homogeneous(g, three[i], set(three[j])) == "red"
        ]
        if reds:
            i, j = reds[0]
            m = three[3 - i - j]
        else:
            # without a red edge, split off the part the next contraction leaves alone
            a, b = mine[len(verts) - 3]
            m = next(p for p in three if not (p & (a | b)))
        rest = u - m
        pa, pb = [p for p in three if p is not m]
        nxt_a, nxt_b = mine[len(verts) - 3]
        joined = nxt_a | nxt_b
        # the part (if any) that the next contraction merges with M
        x_part = None if joined == pa | pb else (pa if pa <= joined else pb)
        s1, t1 = realise(rest)
        s2, t2 = realise(m)
        rel_a = _homogeneous(g, pa, set(m))
        rel_b = _homogeneous(g, pb, set(m))
        if rel_a == rel_b:
            universal = rel_a == "black"
            if x_part is not None:
                s1, t1 = _put_at_end(g, s1, t1, x_part, rest - x_part)
                if s1[-1] not in x_part:
                    # x_part is a prefix: M goes first in sigma
                    return s2 + s1, (t1 + t2 if universal else t2 + t1)
            return s1 + s2, (t2 + t1 if universal else t1 + t2)
        a_side, b_side = (pa, pb) if rel_a == "none" else (pb, pa)
        s1, t1 = _common_intervals(g, s1, t1, a_side, b_side)
        sp = {v: i for i, v in enumerate(s1)}
        if sp[next(iter(b_side))] > sp[next(iter(a_side))]:
            s1 = s1[::-1]
            t1 = t1[::-1]
        sb = [v for v in s1 if v in b_side]
        sa = [v for v in s1 if v in a_side]
        return sb + s2 + sa, t2 + t1

    so, to = realise(frozenset(range(n0)))
    r = Realiser.from_orders(so, to)
    if not realises(g, r):
        raise AssertionError("internal error: realiser does not round-trip")
    return r


def diagram_layout(r: Realiser) -> list[Segment]:
    """One segment per vertex from slot ``sigma(v)`` on top to ``tau(v)`` below."""
    return [Segment(v, r.sigma[v], r.tau[v]) for v in range(r.n)]
