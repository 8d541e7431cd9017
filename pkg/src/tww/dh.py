"""Distance-hereditary graphs: recognition, split trees and twin-width.

A connected graph is distance-hereditary (DH) exactly when it can be
dismantled to one vertex by repeatedly deleting a pendant vertex or one
vertex of a twin pair.  Replaying such an elimination backwards builds the
canonical split tree (a graph-labelled tree whose labels are cliques and
stars).  The twin-width of a DH graph is 0, 1 or 2, read either from the
graph (cograph, permutation graph, otherwise) or from the split tree.
"""

from __future__ import annotations

import random
from collections import deque
from dataclasses import dataclass, field

from .graph import ContractionSequence, Graph, PreconditionError, TrigraphState, VerificationReport, induced_subgraph, verify_sequence
from .modular import is_cograph, modular_decomposition
from .permgraph import compute_realiser

__all__ = [
    "TRUE_TWIN",
    "FALSE_TWIN",
    "PENDANT",
    "NOT_DH",
    "EliminationOrder",
    "InvalidOrderError",
    "dh_elimination",
    "SplitTree",
    "split_tree_dh",
    "classify_by_split_structure",
    "DHClassification",
    "classify_dh_twin_width",
    "dh_2_sequence",
    "pendant_red_violations",
    "asteroidal_triple",
    "is_at_free",
    "connected_components",
]

TRUE_TWIN = "true-twin"
FALSE_TWIN = "false-twin"
PENDANT = "pendant"
NOT_DH = "not-DH"

CLIQUE = "clique"
STAR = "star"


class InvalidOrderError(ValueError):
    pass


@dataclass
class EliminationOrder:
    """Removals ``(vertex, kind, other)``: ``vertex`` is a twin of, or pendant on, ``other``.

    ``last`` is the vertex left once every removal has been applied.
    """

    n: int
    steps: list[tuple[int, str, int]]
    last: int | None

    def validate(self, g: Graph) -> None:
        """Raise :class:`InvalidOrderError` unless the removals are legal on ``g``."""
        if g.n != self.n:
            raise InvalidOrderError(f"order is for n={self.n}, graph has n={g.n}")
        if len(self.steps) != max(self.n - 1, 0):
            raise InvalidOrderError("order must remove all vertices but one")
        adj = [set(a) for a in g.adj]
        alive = set(range(g.n))
        for k, (v, kind, w) in enumerate(self.steps):
            if v not in alive or w not in alive or v == w:
                raise InvalidOrderError(f"step {k}: vertices {v}, {w} not both present")
            if kind == PENDANT:
                ok = adj[v] == {w}
            elif kind == TRUE_TWIN:
                ok = w in adj[v] and adj[v] - {w} == adj[w] - {v}
            elif kind == FALSE_TWIN:
                ok = w not in adj[v] and adj[v] == adj[w]
            else:
                raise InvalidOrderError(f"step {k}: unknown kind {kind!r}")
            if not ok:
                raise InvalidOrderError(f"step {k}: {v} is not {kind} of {w}")
            for u in adj[v]:
                adj[u].discard(v)
            adj[v] = set()
            alive.discard(v)
        if self.n and alive != {self.last}:
            raise InvalidOrderError("last vertex does not match the removals")

    def to_json(self) -> dict:
        return {"n": self.n, "last": self.last, "steps": [list(s) for s in self.steps]}


def connected_components(g: Graph) -> list[list[int]]:
    seen = [False] * g.n
    comps = []
    for s in range(g.n):
        if seen[s]:
            continue
        seen[s] = True
        comp = [s]
        i = 0
        while i < len(comp):
            for w in g.adj[comp[i]]:
                if not seen[w]:
                    seen[w] = True
                    comp.append(w)
            i += 1
        comps.append(sorted(comp))
    return comps


def dh_elimination(g: Graph) -> EliminationOrder | None:
    """Twin/pendant elimination of a connected graph, or ``None`` if it is not DH.

    Neighbourhoods are hashed by XOR of random keys so a twin is found with
    one bucket lookup; every hash match is confirmed on the actual sets.
    """
    n = g.n
    if n == 0:
        return EliminationOrder(0, [], None)
    if len(connected_components(g)) != 1:
        raise PreconditionError("dh_elimination expects a connected graph")
    rng = random.Random(0x5EED)
    key = [rng.getrandbits(64) for _ in range(n)]
    adj = [set(a) for a in g.adj]
    h = [0] * n
    for v in range(n):
        x = 0
        for u in adj[v]:
            x ^= key[u]
        h[v] = x
    open_b: dict[int, set[int]] = {}
    closed_b: dict[int, set[int]] = {}

    def put(v):
        open_b.setdefault(h[v], set()).add(v)
        closed_b.setdefault(h[v] ^ key[v], set()).add(v)

    def drop(v):
        s = open_b[h[v]]
        s.discard(v)
        if not s:
            del open_b[h[v]]
        c = h[v] ^ key[v]
        s = closed_b[c]
        s.discard(v)
        if not s:
            del closed_b[c]

    for v in range(n):
        put(v)
    alive = n
    removed = [False] * n
    queue = deque(range(n))
    steps: list[tuple[int, str, int]] = []

    def find(v):
        av = adj[v]
        if len(av) == 1:
            return PENDANT, next(iter(av))
        for w in open_b.get(h[v], ()):
            if w != v and adj[w] == av:
                return FALSE_TWIN, w
        for w in closed_b.get(h[v] ^ key[v], ()):
            if w != v and w in av and len(adj[w]) == len(av) and adj[w] - {v} == av - {w}:
                return TRUE_TWIN, w
        return None

    while alive > 1 and queue:
        v = queue.popleft()
        if removed[v]:
            continue
        hit = find(v)
        if hit is None:
            continue
        kind, w = hit
        steps.append((v, kind, w))
        drop(v)
        removed[v] = True
        alive -= 1
        for u in adj[v]:
            drop(u)
            h[u] ^= key[v]
            adj[u].discard(v)
            put(u)
            queue.append(u)
        adj[v] = set()
    if alive > 1:
        return None
    last = next(v for v in range(n) if not removed[v])
    return EliminationOrder(n, steps, last)


class SplitTree:
    """Graph-labelled tree whose leaves are the vertices ``0..n-1``.

    Internal nodes have ids ``>= n`` and are labelled by a clique or a star.
    The marker of node ``x`` for the tree-edge ``xy`` is identified with
    ``y``; a star stores the neighbour whose marker is its centre.
    """

    def __init__(self, n: int):
        self.n = n
        self.adj: dict[int, set[int]] = {v: set() for v in range(n)}
        self.kind: dict[int, str] = {}
        self.center: dict[int, int] = {}
        self._next = n

    def _new_node(self, kind: str, center: int | None = None) -> int:
        x = self._next
        self._next += 1
        self.adj[x] = set()
        self.kind[x] = kind
        if center is not None:
            self.center[x] = center
        return x

    def _link(self, a: int, b: int) -> None:
        self.adj[a].add(b)
        self.adj[b].add(a)

    def _unlink(self, a: int, b: int) -> None:
        self.adj[a].discard(b)
        self.adj[b].discard(a)

    def is_leaf(self, x: int) -> bool:
        return x < self.n

    @property
    def internal_nodes(self) -> list[int]:
        return sorted(self.kind)

    def stars(self) -> list[int]:
        return [x for x in self.internal_nodes if self.kind[x] == STAR]

    def marker_adjacent(self, x: int, a: int, b: int) -> bool:
        """Are the markers of ``x`` towards ``a`` and ``b`` adjacent in its label?"""
        if self.kind[x] == CLIQUE:
            return True
        c = self.center[x]
        return a == c or b == c

    def accessibility_graph(self) -> Graph:
        """The graph on the leaves where ``y ~ x`` iff ``y`` is ``x``-accessible."""
        edges = []
        for x in range(self.n):
            for p in self.adj[x]:
                if self.is_leaf(p):
                    edges.append((x, p))
                    continue
                stack = [(p, x)]
                while stack:
                    node, came = stack.pop()
                    for nxt in self.adj[node]:
                        if nxt == came or not self.marker_adjacent(node, came, nxt):
                            continue
                        if self.is_leaf(nxt):
                            edges.append((x, nxt))
                        else:
                            stack.append((nxt, node))
        return Graph(self.n, {(min(a, b), max(a, b)) for a, b in edges})

    def canonical_violations(self) -> list[str]:
        out = []
        for x in self.internal_nodes:
            if len(self.adj[x]) < 3:
                out.append(f"node {x} has degree {len(self.adj[x])}")
            if self.kind[x] == STAR and self.center.get(x) not in self.adj[x]:
                out.append(f"star {x} has no valid centre")
            for y in self.adj[x]:
                if y < x or self.is_leaf(y):
                    continue
                if self.kind[x] == CLIQUE and self.kind[y] == CLIQUE:
                    out.append(f"adjacent cliques {x}, {y}")
                elif self.kind[x] == STAR and self.kind[y] == STAR:
                    if (self.center[x] == y) != (self.center[y] == x):
                        out.append(f"stars {x}, {y} can be merged")
        for v in range(self.n):
            if len(self.adj[v]) != (1 if self.n > 1 else 0):
                out.append(f"leaf {v} has degree {len(self.adj[v])}")
        return out

    def is_canonical(self) -> bool:
        return not self.canonical_violations()

    def is_caterpillar(self) -> bool:
        """True when the internal nodes induce a path (or nothing)."""
        inner = self.kind
        if not inner:
            return True
        degs = [sum(1 for y in self.adj[x] if y in inner) for x in inner]
        return max(degs) <= 2 and sum(degs) == 2 * (len(inner) - 1)

    def to_json(self) -> dict:
        nodes = []
        for x in self.internal_nodes:
            item = {"id": x, "kind": self.kind[x], "neighbours": sorted(self.adj[x])}
            if self.kind[x] == STAR:
                item["center"] = self.center[x]
            nodes.append(item)
        leaf_edges = sorted((v, p) for v in range(self.n) for p in self.adj[v] if v < p)
        return {"leaves": self.n, "nodes": nodes, "leaf_edges": [list(e) for e in leaf_edges]}

    def __repr__(self) -> str:
        return f"SplitTree(leaves={self.n}, nodes={len(self.kind)})"


def split_tree_dh(g: Graph, order: EliminationOrder) -> SplitTree:
    """Canonical split tree of a connected DH graph from its elimination order."""
    order.validate(g)
    t = SplitTree(g.n)
    if g.n <= 1:
        return t
    for v, kind, w in reversed(order.steps):
        if not t.adj[w]:
            # two-vertex tree: a single tree-edge between the leaves
            t._link(v, w)
            continue
        (p,) = t.adj[w]
        if kind == TRUE_TWIN:
            c = t._new_node(CLIQUE)
        elif kind == FALSE_TWIN:
            c = t._new_node(STAR, center=p)
        else:
            c = t._new_node(STAR, center=w)
        t._unlink(w, p)
        if t.center.get(p) == w:
            t.center[p] = c
        t._link(c, w)
        t._link(c, v)
        t._link(c, p)
        if not t.is_leaf(p):
            _maybe_merge(t, c, p)
    return t


def _maybe_merge(t: SplitTree, c: int, p: int) -> None:
    kc, kp = t.kind[c], t.kind[p]
    if kc != kp:
        return
    if kc == STAR:
        c_in, p_in = t.center[c] == p, t.center[p] == c
        if c_in == p_in:
            return
        if p_in:
            t.center[p] = t.center[c]
    for y in list(t.adj[c]):
        t._unlink(c, y)
        if y != p:
            t._link(p, y)
    del t.adj[c], t.kind[c]
    t.center.pop(c, None)


def classify_by_split_structure(t: SplitTree) -> int:
    """Twin-width read from the star orientations of a canonical split tree.

    Rooting the tree at a node ``a``, a star is *bad* when its centre does
    not point back towards ``a``.  Width 0 iff some ``a`` has no bad star
    (every star then points to an edge at ``a``); width 1 iff for some
    ``a`` the bad stars lie on one root path, which then carries them.
    """
    violations = t.canonical_violations()
    if violations:
        raise ValueError("split tree is not canonical: " + "; ".join(violations))
    stars = t.stars()
    if not stars:
        return 0
    nodes = list(t.adj)
    best = 2
    for a in nodes:
        par = {a: None}
        queue = deque([a])
        while queue:
            x = queue.popleft()
            for y in t.adj[x]:
                if y not in par:
                    par[y] = x
                    queue.append(y)
        if len(par) != len(nodes):
            raise ValueError("split tree is not connected")
        bad = {s for s in stars if s != a and par[s] != t.center[s]}
        if not bad:
            return 0
        if best == 2:
            depth = {}
            deepest = max(bad, key=lambda s: _depth(par, s, depth))
            seen = 0
            x = deepest
            while x is not None:
                seen += x in bad
                x = par[x]
            if seen == len(bad):
                best = 1
    return best


def _depth(par, s, memo) -> int:
    chain = []
    x = s
    while x not in memo and par[x] is not None:
        chain.append(x)
        x = par[x]
    d = memo.get(x, 0)
    for y in reversed(chain):
        d += 1
        memo[y] = d
    return memo.get(s, 0)


def dh_2_sequence(g: Graph, order: EliminationOrder, check: bool = False) -> ContractionSequence:
    """2-contraction sequence following the elimination order.

    Removed pendant vertices become red leaves hanging off the remaining
    graph; whenever a vertex would carry two red leaves they are merged at
    once, so every red edge stays pendant.  With ``check`` the invariant is
    confirmed on the real trigraphs after every step.
    """
    order.validate(g)
    n = g.n
    steps: list[tuple[int, int]] = []
    cur = list(range(n))
    leaf: dict[int, int] = {}

    def merge(a: int, b: int) -> int:
        steps.append((a, b))
        return n + len(steps) - 1

    def hang(w: int, part: int) -> None:
        old = leaf.get(w)
        leaf[w] = part if old is None else merge(old, part)

    for v, kind, w in order.steps:
        if kind == PENDANT:
            part = cur[v]
            lv = leaf.pop(v, None)
            if lv is not None:
                part = merge(part, lv)
            hang(w, part)
        else:
            cur[w] = merge(cur[v], cur[w])
            lv = leaf.pop(v, None)
            if lv is not None:
                hang(w, lv)
    if n and order.last in leaf:
        merge(cur[order.last], leaf.pop(order.last))
    seq = ContractionSequence(n, steps, 2)
    if check:
        bad = pendant_red_violations(g, seq)
        if bad:
            raise AssertionError(bad[0])
    return seq


def pendant_red_violations(g: Graph, seq: ContractionSequence) -> list[str]:
    """Steps where a red edge is not pendant or two vertices have red degree 2."""
    state = TrigraphState(g)
    out = []
    for k, (u, v) in enumerate(seq.steps, start=1):
        state.contract(u, v)
        twos = 0
        for s in state.slot.values():
            red = state.red[s]
            if len(red) > 2:
                out.append(f"step {k}: red degree {len(red)}")
            twos += len(red) == 2
            for y in red:
                if len(state.black[s]) + len(red) > 1 and len(state.black[y]) + len(state.red[y]) > 1:
                    out.append(f"step {k}: red edge is not pendant")
                    break
        if twos > 1:
            out.append(f"step {k}: {twos} vertices with two red edges")
    return out


@dataclass
class DHClassification:
    """``width`` is ``None`` when the graph is not DH; ``sequence`` certifies ``width``."""

    width: int | None
    sequence: ContractionSequence | None = None
    report: VerificationReport | None = None
    components: list[int] = field(default_factory=list)

    @property
    def is_dh(self) -> bool:
        return self.width is not None

    @property
    def label(self) -> str:
        return NOT_DH if self.width is None else str(self.width)


def _component_width(h: Graph) -> int:
    if h.n <= 1:
        return 0
    if is_cograph(modular_decomposition(h)):
        return 0
    return 1 if compute_realiser(h) is not None else 2


def _combine(n: int, pieces: list[tuple[list[int], ContractionSequence]], width: int) -> ContractionSequence:
    steps: list[tuple[int, int]] = []
    finals = []
    for verts, seq in pieces:
        k = seq.n0
        ids = {i: verts[i] for i in range(k)}
        for j, (a, b) in enumerate(seq.steps):
            steps.append((ids.pop(a), ids.pop(b)))
            ids[k + j] = n + len(steps) - 1
        finals.extend(ids.values())
    while len(finals) > 1:
        a, b = finals.pop(), finals.pop()
        steps.append((a, b))
        finals.append(n + len(steps) - 1)
    return ContractionSequence(n, steps, width)


def classify_dh_twin_width(g: Graph) -> DHClassification:
    """Twin-width of a DH graph with a verified certificate, or not-DH.

    Components are classified separately and the widths combined by max.
    """
    from .tww1 import recognize

    comps = connected_components(g)
    subs = []
    widths = []
    for comp in comps:
        h, verts, _ = induced_subgraph(g, comp)
        order = dh_elimination(h)
        if order is None:
            return DHClassification(None)
        subs.append((h, verts, order))
        widths.append(_component_width(h))
    width = max(widths, default=0)
    if width <= 1:
        outcome = recognize(g)
        if not outcome.accepted:
            raise RuntimeError("width at most 1 predicted but recognition rejected")
        seq = ContractionSequence(g.n, outcome.sequence.steps, width)
    else:
        seq = _combine(g.n, [(verts, dh_2_sequence(h, order)) for h, verts, order in subs], 2)
    report = verify_sequence(g, seq, width)
    if not report.ok:
        raise RuntimeError(f"certificate failed verification at width {width}")
    return DHClassification(width, seq, report, widths)


def asteroidal_triple(g: Graph) -> tuple[int, int, int] | None:
    """Some asteroidal triple of ``g``, or ``None``; cubic in ``n``."""
    n = g.n
    comp = []
    for z in range(n):
        block = g.adj[z] | {z}
        lab = [-1] * n
        c = 0
        for s in range(n):
            if s in block or lab[s] >= 0:
                continue
            lab[s] = c
            stack = [s]
            while stack:
                x = stack.pop()
                for y in g.adj[x]:
                    if lab[y] < 0 and y not in block:
                        lab[y] = c
                        stack.append(y)
            c += 1
        comp.append(lab)
    for x in range(n):
        cx = comp[x]
        for y in range(x + 1, n):
            if cx[y] < 0:
                continue
            cy = comp[y]
            for z in range(y + 1, n):
                if cx[z] == cx[y] and cy[z] == cy[x] >= 0 and comp[z][x] == comp[z][y] >= 0:
                    return x, y, z
    return None


def is_at_free(g: Graph) -> bool:
    return asteroidal_triple(g) is None
