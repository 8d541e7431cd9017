"""Modular decomposition, quotients, cograph test and sequence assembly.

The decomposition follows the vertex-partitioning scheme: for a pivot
``v`` of minimum degree, the maximal modules not containing ``v`` are found
by partition refinement; the modules containing ``v`` form a chain which is
read off the strongly connected components of a forcing digraph on those
parts ("part Y must join any module containing v and X").  Each part is
then decomposed on its own.
"""

from __future__ import annotations

from typing import Iterator, Mapping

from ._refine import refine
from .graph import ContractionSequence, Graph

__all__ = [
    "MDNode",
    "SERIES",
    "PARALLEL",
    "PRIME",
    "LEAF",
    "NotModularError",
    "MissingPrimeSequence",
    "modular_decomposition",
    "quotient",
    "is_cograph",
    "assemble_sequence",
    "is_module",
]

LEAF = "leaf"
SERIES = "series"
PARALLEL = "parallel"
PRIME = "prime"


class NotModularError(ValueError):
    def __init__(self, part, splitter):
        super().__init__(f"vertex {splitter} splits part {sorted(part)}")
        self.part = part
        self.splitter = splitter


class MissingPrimeSequence(KeyError):
    def __init__(self, node: "MDNode"):
        super().__init__(f"no contraction sequence for prime node with smallest leaf {node.min_leaf}")
        self.node = node


class MDNode:
    """Node of the modular decomposition tree.

    For prime nodes ``quotient`` is the graph on the children (vertex ``i``
    is ``children[i]``, represented by its smallest leaf).  ``vertices`` is
    computed on demand; ``min_leaf`` and ``size`` are stored.
    """

    __slots__ = ("kind", "children", "vertex", "quotient", "min_leaf", "size")

    def __init__(self, kind: str, children: list["MDNode"] | None = None, vertex: int | None = None,
                 quotient: Graph | None = None):
        self.kind = kind
        self.children = [] if children is None else children
        self.vertex = vertex
        self.quotient = quotient
        self.min_leaf = vertex if vertex is not None else -1
        self.size = 1 if vertex is not None else 0

    @property
    def vertices(self) -> list[int]:
        return sorted(x.vertex for x in self.walk() if x.kind == LEAF)

    @property
    def is_leaf(self) -> bool:
        return self.kind == LEAF

    def walk(self) -> Iterator["MDNode"]:
        stack = [self]
        while stack:
            node = stack.pop()
            yield node
            stack.extend(reversed(node.children))

    def prime_nodes(self) -> list["MDNode"]:
        return [x for x in self.walk() if x.kind == PRIME]

    def to_json(self) -> dict:
        if self.is_leaf:
            return {"kind": LEAF, "vertex": self.vertex}
        out = {"kind": self.kind, "children": [c.to_json() for c in self.children]}
        if self.quotient is not None:
            out["quotient_edges"] = [list(e) for e in sorted(self.quotient.edges())]
        return out

    def __repr__(self) -> str:
        if self.is_leaf:
            return f"MDNode(leaf {self.vertex})"
        return f"MDNode({self.kind}, {len(self.children)} children, {self.size} leaves)"


def is_module(g: Graph, s) -> bool:
    s = set(s)
    return _splitter(g, s) is None


def _splitter(g: Graph, s: set[int]) -> int | None:
    if not s:
        return None
    outside = set()
    for v in s:
        outside |= g.adj[v]
    outside -= s
    size = len(s)
    for y in sorted(outside):
        hit = len(g.adj[y] & s) if len(g.adj[y]) < size else sum(1 for v in s if v in g.adj[y])
        if hit != size:
            return y
    return None


def _scc_order(k: int, out: list[set[int]]) -> list[list[int]]:
    """Tarjan's algorithm, iterative; components come out sinks first."""
    index = [-1] * k
    low = [0] * k
    on_stack = [False] * k
    stack: list[int] = []
    comps: list[list[int]] = []
    counter = 0
    for root in range(k):
        if index[root] != -1:
            continue
        work = [(root, iter(sorted(out[root])))]
        index[root] = low[root] = counter
        counter += 1
        stack.append(root)
        on_stack[root] = True
        while work:
            node, it = work[-1]
            advanced = False
            for nxt in it:
                if index[nxt] == -1:
                    index[nxt] = low[nxt] = counter
                    counter += 1
                    stack.append(nxt)
                    on_stack[nxt] = True
                    work.append((nxt, iter(sorted(out[nxt]))))
                    advanced = True
                    break
                if on_stack[nxt] and index[nxt] < low[node]:
                    low[node] = index[nxt]
            if advanced:
                continue
            work.pop()
            if work:
                parent = work[-1][0]
                if low[node] < low[parent]:
                    low[parent] = low[node]
            if low[node] == index[node]:
                comp = []
                while True:
                    w = stack.pop()
                    on_stack[w] = False
                    comp.append(w)
                    if w == node:
                        break
                comps.append(comp)
    return comps


def _components(adj: list[list[int]]) -> list[list[int]]:
    k = len(adj)
    seen = [False] * k
    out = []
    for r in range(k):
        if seen[r]:
            continue
        seen[r] = True
        comp = [r]
        i = 0
        while i < len(comp):
            for w in adj[comp[i]]:
                if not seen[w]:
                    seen[w] = True
                    comp.append(w)
            i += 1
        out.append(comp)
    return out


def _co_components(adj: list[list[int]]) -> list[list[int]]:
    """Components of the complement in O(k + m)."""
    unvisited = set(range(len(adj)))
    out = []
    while unvisited:
        r = unvisited.pop()
        comp = [r]
        i = 0
        while i < len(comp) and unvisited:
            nbs = set(adj[comp[i]])
            # survivors are neighbours of comp[i], so the scan is paid by edges
            found = [w for w in unvisited if w not in nbs]
            unvisited.difference_update(found)
            comp.extend(found)
            i += 1
        out.append(comp)
    return out


def _decompose_block(g: Graph, verts: list[int], loc: list[int], stamp: list[int], bid: int, known=None):
    """One round on ``G[verts]``: returns (root, [(placeholder, part vertices, hint)]).

    ``loc``/``stamp`` are shared scratch arrays: ``loc[v]`` is the local
    index of ``v`` whenever ``stamp[v] == bid``.  ``known`` names a root
    kind already ruled out (the block came from a node of that kind).
    """
    k = len(verts)
    pending: list[tuple[MDNode, list[int], str | None]] = []
    if k == 2:
        a, b = verts
        kind = SERIES if b in g.adj[a] else PARALLEL
        return MDNode(kind=kind, children=[MDNode(LEAF, vertex=a), MDNode(LEAF, vertex=b)]), pending
    gadj = g.adj
    if k == 3:
        # every 3-vertex graph is a cograph: one edge or one non-edge decides it
        a, b, c = verts
        pairs = ((a, b, c), (a, c, b), (b, c, a))
        present = [y in gadj[x] for x, y, _ in pairs]
        e = sum(present)
        if e in (0, 3):
            kind = PARALLEL if e == 0 else SERIES
            return MDNode(kind=kind, children=[MDNode(LEAF, vertex=v) for v in verts]), pending
        kind, odd = (PARALLEL, True) if e == 1 else (SERIES, False)
        x, y, z = pairs[present.index(odd)]
        node = MDNode(kind=LEAF)
        pending.append((node, [x, y], kind))
        return MDNode(kind=kind, children=[node, MDNode(LEAF, vertex=z)]), pending
    if k == g.n:
        # whole graph: verts is 0..n-1, no filtering needed
        adj = [list(gadj[v]) for v in verts]
    else:
        for i, v in enumerate(verts):
            loc[v] = i
            stamp[v] = bid
        adj = [[loc[w] for w in gadj[v] if stamp[w] == bid] for v in verts]

    def hold(members: list[int], hint=None) -> MDNode:
        if len(members) == 1:
            return MDNode(LEAF, vertex=verts[members[0]])
        node = MDNode(kind=LEAF)
        pending.append((node, [verts[u] for u in members], hint))
        return node

    # degenerate roots are read off (co-)components directly; this keeps long
    # chains of unions and joins from being peeled one vertex at a time
    for kind, finder in ((PARALLEL, _components), (SERIES, _co_components)):
        if kind == known:
            continue
        comps_ = finder(adj)
        if len(comps_) > 1:
            return MDNode(kind=kind, children=[hold(c, kind) for c in comps_]), pending

    v = min(range(k), key=lambda u: (len(adj[u]), verts[u]))
    _, classes = refine(adj, v, ordered=False)
    parts = [c for c in classes if c != [v]]
    part_of = [-1] * k
    for i, p in enumerate(parts):
        for u in p:
            part_of[u] = i
    nv = set(adj[v])
    out: list[set[int]] = []
    for i, p in enumerate(parts):
        x = p[0]
        nx = set(adj[x])
        targets = set()
        for y in adj[x]:
            if y != v and y not in nv:
                targets.add(part_of[y])
        for y in nv:
            if y not in nx and y != x:
                targets.add(part_of[y])
        targets.discard(i)
        out.append(targets)
    comps = _scc_order(len(parts), out)

    def placeholder(i: int) -> MDNode:
        return hold(parts[i])

    current = MDNode(LEAF, vertex=verts[v])
    for comp in comps:
        if len(comp) == 1:
            i = comp[0]
            kind = SERIES if parts[i][0] in nv else PARALLEL
            if current.kind == kind:
                current.children.append(placeholder(i))
            else:
                current = MDNode(kind=kind, children=[current, placeholder(i)])
        else:
            current = MDNode(kind=PRIME, children=[current] + [placeholder(i) for i in sorted(comp)])
    return current, pending


def modular_decomposition(g: Graph) -> MDNode:
    """Canonical modular decomposition tree of ``g`` (``g.n >= 1``).

    Children are sorted by smallest leaf; prime nodes carry their quotient.
    """
    if g.n < 1:
        raise ValueError("modular decomposition needs at least one vertex")
    root_holder = MDNode(kind=LEAF)
    work: list[tuple[MDNode, list[int], str | None]] = [(root_holder, list(range(g.n)), None)]
    loc = [0] * g.n
    stamp = [-1] * g.n
    bid = 0
    while work:
        holder, verts, known = work.pop()
        if len(verts) == 1:
            holder.kind = LEAF
            holder.vertex = verts[0]
            continue
        bid += 1
        node, pending = _decompose_block(g, verts, loc, stamp, bid, known)
        # fill the placeholder in place so parents keep their reference
        holder.kind = node.kind
        holder.children = node.children
        holder.vertex = node.vertex
        work.extend(pending)
    _normalise(g, root_holder)
    return root_holder


def _normalise(g: Graph, root: MDNode) -> None:
    post: list[MDNode] = []
    stack = [root]
    while stack:
        node = stack.pop()
        post.append(node)
        stack.extend(node.children)
    for node in reversed(post):
        if node.kind == LEAF:
            node.min_leaf = node.vertex
            node.size = 1
            continue
        if node.kind in (SERIES, PARALLEL):
            flat = []
            for c in node.children:
                if c.kind == node.kind:
                    flat.extend(c.children)
                else:
                    flat.append(c)
            node.children = flat
        node.children.sort(key=lambda c: c.min_leaf)
        node.min_leaf = node.children[0].min_leaf
        node.size = sum(c.size for c in node.children)
        if node.kind == PRIME:
            reps = [c.min_leaf for c in node.children]
            where = {r: i for i, r in enumerate(reps)}
            qadj = [[where[w] for w in g.adj[r] if w in where] for r in reps]
            node.quotient = Graph.from_adjacency(qadj)
        else:
            node.quotient = None


def quotient(g: Graph, partition, validate: bool = True) -> Graph:
    """Quotient by a modular partition; vertex ``i`` stands for ``partition[i]``.

    With ``validate`` the partition is checked by brute force and a
    :class:`NotModularError` names a splitter.
    """
    parts = [sorted(p) for p in partition]
    seen = sorted(v for p in parts for v in p)
    if seen != list(range(g.n)):
        raise ValueError("not a partition of the vertex set")
    if validate:
        for p in parts:
            y = _splitter(g, set(p))
            if y is not None:
                raise NotModularError(p, y)
    reps = [p[0] for p in parts]
    where = {r: i for i, r in enumerate(reps)}
    return Graph.from_adjacency([[where[w] for w in g.adj[r] if w in where] for r in reps])


def is_cograph(t: MDNode) -> bool:
    return all(node.kind != PRIME for node in t.walk())


def assemble_sequence(
    t: MDNode,
    prime_sequences: Mapping[MDNode, ContractionSequence],
    n: int | None = None,
) -> ContractionSequence:
    """Glue per-node sequences into one sequence for the whole graph.

    Every maximal strong module is contracted to a single vertex before its
    parent's quotient sequence runs; degenerate nodes contract their two
    lowest current ids until one vertex remains.
    """
    n0 = t.size if n is None else n
    steps: list[tuple[int, int]] = []
    next_id = n0
    width = 0
    result: dict[int, int] = {}
    stack: list[tuple[MDNode, bool]] = [(t, False)]
    while stack:
        node, expanded = stack.pop()
        if node.is_leaf:
            result[id(node)] = node.vertex
            continue
        if not expanded:
            stack.append((node, True))
            for c in reversed(node.children):
                stack.append((c, False))
            continue
        ids = [result.pop(id(c)) for c in node.children]
        if node.kind == PRIME:
            seq = prime_sequences.get(node)
            if seq is None:
                raise MissingPrimeSequence(node)
            k = len(ids)
            if seq.n0 != k or len(seq.steps) != k - 1:
                raise ValueError(f"sequence for prime node has wrong size (n={seq.n0}, k={k})")
            width = max(width, seq.claimed_width)
            qmap = dict(enumerate(ids))
            for j, (a, b) in enumerate(seq.steps):
                steps.append((qmap.pop(a), qmap.pop(b)))
                qmap[k + j] = next_id
                next_id += 1
            (final,) = qmap.values()
        else:
            live = sorted(ids)
            while len(live) > 1:
                a, b = live[0], live[1]
                steps.append((a, b))
                live = live[2:] + [next_id]
                next_id += 1
            final = live[0]
        result[id(node)] = final
    return ContractionSequence(n0, steps, width)
