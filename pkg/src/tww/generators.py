"""Random and named graph families used by tests, benchmarks and the CLI."""

from __future__ import annotations

import random

from .graph import Graph

__all__ = [
    "GENERATORS",
    "caterpillar",
    "random_tww1",
    "random_realiser_graph",
    "random_graph",
    "random_dh",
    "random_tree",
    "cycle",
    "path",
    "spider",
    "named_graph",
    "relabel",
]


def _rng(seed) -> random.Random:
    return seed if isinstance(seed, random.Random) else random.Random(seed)


def relabel(g: Graph, rng: random.Random) -> Graph:
    perm = list(range(g.n))
    rng.shuffle(perm)
    return Graph(g.n, [(perm[u], perm[v]) for u, v in g.edges()])


def path(n: int) -> Graph:
    return Graph(n, [(i, i + 1) for i in range(n - 1)])


def cycle(n: int) -> Graph:
    if n < 3:
        raise ValueError("a cycle needs at least 3 vertices")
    return Graph(n, [(i, (i + 1) % n) for i in range(n)])


def spider(legs: int = 3, length: int = 2) -> Graph:
    """Star with ``legs`` paths of ``length`` edges; the default is the subdivided claw."""
    edges = []
    nxt = 1
    for _ in range(legs):
        prev = 0
        for _ in range(length):
            edges.append((prev, nxt))
            prev = nxt
            nxt += 1
    return Graph(nxt, edges)


def caterpillar(n: int, seed=None, spine: int | None = None) -> Graph:
    """Random caterpillar: a path of ``spine`` vertices plus pendant leaves."""
    rng = _rng(seed)
    if n <= 2:
        return path(n)
    s = spine if spine is not None else rng.randint(1, max(1, n // 2))
    s = max(1, min(s, n))
    edges = [(i, i + 1) for i in range(s - 1)]
    edges += [(rng.randrange(s), v) for v in range(s, n)]
    return relabel(Graph(n, edges), rng)


def random_tree(n: int, seed=None) -> Graph:
    rng = _rng(seed)
    return Graph(n, [(rng.randrange(v), v) for v in range(1, n)])


def random_graph(n: int, p: float = 0.5, seed=None) -> Graph:
    rng = _rng(seed)
    return Graph(n, [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < p])


def random_realiser_graph(n: int, seed=None, sparse: bool = False) -> Graph:
    """Inversion graph of a random permutation.

    With ``sparse`` the permutation only shuffles within blocks of six, which
    keeps the edge count linear for large ``n``.
    """
    rng = _rng(seed)
    tau = list(range(n))
    if sparse:
        edges = []
        for lo in range(0, n, 6):
            block = tau[lo:lo + 6]
            rng.shuffle(block)
            edges += _inversions(block)
        return relabel(Graph(n, edges), rng)
    rng.shuffle(tau)
    return Graph(n, _inversions(tau))


def _inversions(tau: list[int]) -> list[tuple[int, int]]:
    n = len(tau)
    return [(tau[i], tau[j]) for i in range(n) for j in range(i + 1, n) if tau[i] > tau[j]]


def random_tww1(n: int, seed=None, max_module: int = 4, join_limit: int = 8, small_side: int = 6) -> Graph:
    """Random graph of twin-width at most 1 built by module attachment.

    The graph grows by adding a small module ``M`` (itself such a graph)
    that is isolated, universal (only while the graph is small), or adjacent
    to exactly one side ``X`` of a bipartition ``(X, Y)`` that ends some
    1-contraction sequence of the current graph.  After attaching, each of
    ``(M, rest)``, ``(X + M, Y)`` and ``(X, Y + M)`` again ends such a
    sequence, so the invariant carries over.
    """
    rng = _rng(seed)
    if n <= 0:
        return Graph(0)
    edges: list[tuple[int, int]] = []
    size = 1
    # only the small side X is tracked; the other side is everything else
    xs: list[int] = [0]
    while size < n:
        k = min(rng.randint(1, max_module), n - size)
        members = list(range(size, size + k))
        if k > 1:
            inner = random_tww1(k, rng, max_module=2, join_limit=k, small_side=k)
            edges += [(size + u, size + v) for u, v in inner.edges()]
        r = rng.random()
        if r < 0.05:
            xs = members
        elif r < 0.10 and size <= join_limit:
            edges += [(u, v) for u in range(size) for v in members]
            xs = members
        else:
            edges += [(u, v) for u in xs for v in members]
            r = rng.random()
            if r < 0.3:
                xs = members
            elif r < 0.45 and len(xs) + k <= small_side:
                xs = xs + members
        size += k
    return relabel(Graph(n, edges), rng)


def random_dh(n: int, seed=None, weights=(1.0, 1.0, 1.0)) -> Graph:
    """Connected distance-hereditary graph grown by pendant, true-twin and false-twin steps."""
    rng = _rng(seed)
    if n <= 0:
        return Graph(0)
    adj: list[set[int]] = [set()]
    for v in range(1, n):
        u = rng.randrange(v)
        op = rng.choices(("pendant", "true", "false"), weights=weights)[0]
        if op == "pendant" or (op == "false" and not adj[u]):
            nb = {u}
        elif op == "true":
            nb = adj[u] | {u}
        else:
            nb = set(adj[u])
        adj.append(nb)
        for w in nb:
            adj[w].add(v)
    return relabel(Graph.from_adjacency(adj), rng)


_NAMED = {
    "gem": (5, [(0, 1), (1, 2), (2, 3), (4, 0), (4, 1), (4, 2), (4, 3)]),
    "house": (5, [(0, 1), (1, 2), (2, 3), (3, 0), (2, 4), (3, 4)]),
    "domino": (6, [(0, 1), (1, 2), (3, 4), (4, 5), (0, 3), (1, 4), (2, 5)]),
    "bull": (5, [(0, 1), (1, 2), (2, 0), (0, 3), (1, 4)]),
    "p4": (4, [(0, 1), (1, 2), (2, 3)]),
}


def named_graph(name: str) -> Graph:
    """gem, house, domino, bull, p4, cN (cycle), pN (path), spider."""
    key = name.lower()
    if key in _NAMED:
        n, e = _NAMED[key]
        return Graph(n, e)
    if key == "spider":
        return spider()
    if key[:1] in ("c", "p") and key[1:].isdigit():
        k = int(key[1:])
        return cycle(k) if key[0] == "c" else path(k)
    raise ValueError(f"unknown graph name {name!r}")


GENERATORS = {
    "caterpillar": lambda n, seed=None: caterpillar(n, seed),
    "random-tww1": lambda n, seed=None: random_tww1(n, seed),
    "random-realiser": lambda n, seed=None: random_realiser_graph(n, seed, sparse=n > 2000),
    "random-graph": lambda n, seed=None: random_graph(n, min(1.0, 4.0 / max(n, 1)), seed),
    "random-dh": lambda n, seed=None: random_dh(n, seed),
}
