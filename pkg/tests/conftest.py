from __future__ import annotations

import functools
from pathlib import Path

import pytest

from tww.graph import Graph
from tww.io import iter_graph6

DATA = Path(__file__).parent / "data"


@functools.lru_cache(maxsize=None)
def atlas() -> tuple[Graph, ...]:
    """Every graph on at most 7 vertices up to isomorphism (1253 graphs)."""
    return tuple(iter_graph6((DATA / "atlas_n7.g6").read_text()))


@functools.lru_cache(maxsize=None)
def connected_n6() -> tuple[Graph, ...]:
    return tuple(iter_graph6((DATA / "connected_n6.g6").read_text()))


def is_connected(g: Graph) -> bool:
    if g.n == 0:
        return True
    seen = {0}
    stack = [0]
    while stack:
        for w in g.adj[stack.pop()]:
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return len(seen) == g.n


def all_modules(g: Graph) -> list[frozenset]:
    out = []
    for mask in range(1, 1 << g.n):
        s = frozenset(i for i in range(g.n) if mask >> i & 1)
        if all(not (0 < len(g.adj[y] & s) < len(s)) for y in range(g.n) if y not in s):
            out.append(s)
    return out


def strong_modules(g: Graph) -> set[frozenset]:
    ms = all_modules(g)
    return {m for m in ms if all(m <= x or x <= m or not (m & x) for x in ms)}


@pytest.fixture(scope="session")
def atlas_graphs():
    return atlas()


def K(n: int) -> Graph:
    return Graph(n, [(i, j) for i in range(n) for j in range(i + 1, n)])


def P(n: int) -> Graph:
    return Graph(n, [(i, i + 1) for i in range(n - 1)])


def C(n: int) -> Graph:
    return Graph(n, [(i, (i + 1) % n) for i in range(n)])


def pytest_terminal_summary(terminalreporter):
    import sys

    mod = sys.modules.get("test_acceptance")
    results = getattr(mod, "RESULTS", None)
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(results):
        ok, detail = results[k]
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'} criterion {k}: {detail}")
