"""Graphs, trigraphs, contractions and contraction-sequence verification."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

__all__ = [
    "Graph",
    "Trigraph",
    "ContractionSequence",
    "VerificationReport",
    "SequenceError",
    "PreconditionError",
    "contract",
    "verify_sequence",
    "induced_subgraph",
    "complement",
]

MATRIX_LIMIT = 4096


class PreconditionError(ValueError):
    """An operation was called with arguments violating its precondition."""


class SequenceError(ValueError):
    """A contraction sequence is structurally malformed (bad or reused ids)."""


def _pair(u: int, v: int) -> tuple[int, int]:
    return (u, v) if u < v else (v, u)


class Graph:
    """Simple undirected graph on the dense vertex set ``0..n-1``.

    Neighbour sets are always available; for ``n <= 4096`` an adjacency
    bitmask per vertex is also built lazily (``masks``).
    """

    __slots__ = ("n", "adj", "_m", "_masks")

    def __init__(self, n: int, edges: Iterable[tuple[int, int]] = ()):
        if n < 0:
            raise ValueError("vertex count must be non-negative")
        self.n = n
        adj: list[set[int]] = [set() for _ in range(n)]
        m = 0
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u}, {v}) out of range for n={n}")
            if u == v:
                raise ValueError(f"self-loop at {u}")
            if v in adj[u]:
                raise ValueError(f"duplicate edge ({u}, {v})")
            adj[u].add(v)
            adj[v].add(u)
            m += 1
        self.adj = adj
        self._m = m
        self._masks: list[int] | None = None

    @classmethod
    def from_adjacency(cls, adj: Sequence[Iterable[int]]) -> "Graph":
        """Build from symmetric neighbour collections without re-validating."""
        g = cls.__new__(cls)
        g.n = len(adj)
        g.adj = [set(a) for a in adj]
        g._m = sum(len(a) for a in g.adj) // 2
        g._masks = None
        return g

    @property
    def m(self) -> int:
        return self._m

    @property
    def masks(self) -> list[int]:
        if self._masks is None:
            if self.n > MATRIX_LIMIT:
                raise ValueError("bit matrix only kept for n <= 4096")
            self._masks = [sum(1 << v for v in a) for a in self.adj]
        return self._masks

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(self.n) for v in self.adj[u] if u < v]

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.adj[u]

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self.n == other.n and self.adj == other.adj

    def __hash__(self):
        return hash((self.n, frozenset(self.edges())))

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.m})"


def induced_subgraph(g: Graph, s: Iterable[int]) -> tuple[Graph, list[int], dict[int, int]]:
    """Dense re-indexed subgraph induced by ``s``.

    Returns ``(h, new_to_old, old_to_new)``; vertices keep their relative order.
    """
    verts = sorted(set(s))
    for v in verts:
        if not 0 <= v < g.n:
            raise ValueError(f"vertex {v} out of range")
    old_to_new = {v: i for i, v in enumerate(verts)}
    adj = [[old_to_new[w] for w in g.adj[v] if w in old_to_new] for v in verts]
    return Graph.from_adjacency(adj), verts, old_to_new


def complement(g: Graph) -> Graph:
    full = set(range(g.n))
    return Graph.from_adjacency([full - g.adj[v] - {v} for v in range(g.n)])


@dataclass(frozen=True)
class Trigraph:
    """Trigraph with its partition of the original vertex set.

    ``black`` and ``red`` hold unordered pairs as sorted tuples.
    """

    vertices: frozenset
    black: frozenset
    red: frozenset
    parts: dict = field(compare=False)
    next_id: int = field(default=0, compare=False)

    @classmethod
    def from_graph(cls, g: Graph) -> "Trigraph":
        return cls(
            vertices=frozenset(range(g.n)),
            black=frozenset(g.edges()),
            red=frozenset(),
            parts={v: frozenset([v]) for v in range(g.n)},
            next_id=g.n,
        )

    def black_neighbours(self, v: int) -> set[int]:
        return {a if b == v else b for a, b in self.black if v in (a, b)}

    def red_neighbours(self, v: int) -> set[int]:
        return {a if b == v else b for a, b in self.red if v in (a, b)}

    def red_degree(self, v: int) -> int:
        return sum(1 for e in self.red if v in e)

    def max_red_degree(self) -> int:
        deg: dict[int, int] = {}
        for a, b in self.red:
            deg[a] = deg.get(a, 0) + 1
            deg[b] = deg.get(b, 0) + 1
        return max(deg.values(), default=0)

    def contract(self, u: int, v: int) -> "Trigraph":
        return contract(self, u, v)


def contract(h: Trigraph, u: int, v: int) -> Trigraph:
    """Return ``h/{u, v}``; the merged vertex gets id ``h.next_id``."""
    if u == v or u not in h.vertices or v not in h.vertices:
        raise PreconditionError(f"cannot contract {u} and {v}")
    x = h.next_id
    bu, bv = h.black_neighbours(u), h.black_neighbours(v)
    ru, rv = h.red_neighbours(u), h.red_neighbours(v)
    touched = (bu | bv | ru | rv) - {u, v}
    black = {e for e in h.black if u not in e and v not in e}
    red = {e for e in h.red if u not in e and v not in e}
    for y in touched:
        if y in bu and y in bv:
            black.add(_pair(x, y))
        else:
            red.add(_pair(x, y))
    parts = {k: p for k, p in h.parts.items() if k != u and k != v}
    parts[x] = h.parts[u] | h.parts[v]
    return Trigraph(
        vertices=(h.vertices - {u, v}) | {x},
        black=frozenset(black),
        red=frozenset(red),
        parts=parts,
        next_id=x + 1,
    )


@dataclass
class ContractionSequence:
    """Ordered merges; step ``k`` (1-based) creates vertex ``n0 + k - 1``."""

    n0: int
    steps: list[tuple[int, int]]
    claimed_width: int = 1

    @property
    def is_complete(self) -> bool:
        return len(self.steps) == max(self.n0 - 1, 0)

    @property
    def is_partial(self) -> bool:
        return not self.is_complete

    def check_structure(self) -> None:
        """Raise :class:`SequenceError` unless ids follow the naming convention."""
        alive = set(range(self.n0))
        if len(self.steps) > max(self.n0 - 1, 0):
            raise SequenceError("too many steps")
        for k, (u, v) in enumerate(self.steps, start=1):
            if u == v:
                raise SequenceError(f"step {k}: contracts {u} with itself")
            for w in (u, v):
                if w not in alive:
                    raise SequenceError(f"step {k}: vertex {w} is not active")
            alive.discard(u)
            alive.discard(v)
            alive.add(self.n0 + k - 1)

    def to_json(self) -> dict:
        return {
            "version": 1,
            "n": self.n0,
            "width": self.claimed_width,
            "steps": [[u, v] for u, v in self.steps],
        }

    @classmethod
    def from_json(cls, data: dict) -> "ContractionSequence":
        if not isinstance(data, dict) or data.get("version") != 1:
            raise SequenceError("sequence file must be an object with version 1")
        try:
            n = data["n"]
            width = data["width"]
            raw = data["steps"]
        except KeyError as exc:
            raise SequenceError(f"missing field {exc.args[0]!r}") from None
        if not (isinstance(n, int) and isinstance(width, int) and n >= 0 and width >= 0):
            raise SequenceError("n and width must be non-negative integers")
        steps = []
        for item in raw:
            if not (
                isinstance(item, list)
                and len(item) == 2
                and all(isinstance(x, int) and not isinstance(x, bool) for x in item)
            ):
                raise SequenceError(f"malformed step {item!r}")
            steps.append((item[0], item[1]))
        return cls(n, steps, width)


@dataclass
class VerificationReport:
    ok: bool
    width: int
    max_red_degree: int
    red_edge_counts: list[int]
    failed_step: int | None = None
    failed_vertex: int | None = None
    complete: bool = True

    def __bool__(self) -> bool:
        return self.ok


class TrigraphState:
    """Mutable trigraph used by the verifier; O(min degree) per contraction.

    A merged vertex reuses the slot of the endpoint with more neighbours, so
    the neighbourhoods of untouched vertices never need renaming.
    """

    def __init__(self, g: Graph):
        self.black: list[set[int]] = [set(a) for a in g.adj]
        self.red: list[set[int]] = [set() for _ in range(g.n)]
        self.slot: dict[int, int] = {v: v for v in range(g.n)}
        self.ext: list[int] = list(range(g.n))
        self.red_edges = 0
        self.next_id = g.n

    def red_degree(self, v: int) -> int:
        return len(self.red[self.slot[v]])

    def max_red_degree(self) -> int:
        return max((len(self.red[s]) for s in self.slot.values()), default=0)

    def contract(self, u: int, v: int, limit: int | None = None) -> tuple[int, int | None, int]:
        """Contract ``u`` and ``v``.

        Returns ``(new_id, offender, peak)`` where ``peak`` is the largest red
        degree among vertices whose red degree may have grown, and
        ``offender`` is one of them exceeding ``limit``.  When the merged
        vertex is over ``limit`` by counting alone the state is left
        half-updated and must be discarded.
        """
        su, sv = self.slot.pop(u), self.slot.pop(v)
        black, red = self.black, self.red
        if len(black[su]) + len(red[su]) <= len(black[sv]) + len(red[sv]):
            s, big = su, sv
        else:
            s, big = sv, su
        x = self.next_id
        self.next_id += 1
        self.ext[big] = x
        self.slot[x] = big
        bs, rs, bb, rb = black[s], red[s], black[big], red[big]
        if big in bs:
            bs.discard(big)
            bb.discard(s)
        elif big in rs:
            rs.discard(big)
            rb.discard(s)
            self.red_edges -= 1
        common = 0
        grew: list[int] = []
        for y in bs:
            black[y].discard(s)
            if y in bb:
                common += 1
            elif y not in rb:
                red[y].add(big)
                rb.add(y)
                self.red_edges += 1
                grew.append(y)
        for y in rs:
            red[y].discard(s)
            self.red_edges -= 1
            if y in rb:
                continue
            if y in bb:
                bb.discard(y)
                black[y].discard(big)
            red[y].add(big)
            rb.add(y)
            self.red_edges += 1
        big_only = len(bb) - common
        if limit is not None and len(rb) + big_only > limit:
            return x, x, len(rb) + big_only
        if big_only:
            for y in [y for y in bb if y not in bs]:
                bb.discard(y)
                black[y].discard(big)
                red[y].add(big)
                rb.add(y)
                self.red_edges += 1
                grew.append(y)
        bs.clear()
        rs.clear()
        peak = len(rb)
        offender = x if limit is not None and peak > limit else None
        for y in grew:
            dy = len(red[y])
            if dy > peak:
                peak = dy
            if offender is None and limit is not None and dy > limit:
                offender = self.ext[y]
        return x, offender, peak


def verify_sequence(g: Graph, seq: ContractionSequence, d: int | None = None) -> VerificationReport:
    """Simulate ``seq`` on ``g`` and check every trigraph has red degree <= ``d``.

    ``d`` defaults to the sequence's claimed width.  Raises
    :class:`SequenceError` for malformed sequences (checked before simulating).
    """
    if d is None:
        d = seq.claimed_width
    if seq.n0 != g.n:
        raise SequenceError(f"sequence is for n={seq.n0}, graph has n={g.n}")
    seq.check_structure()
    state = TrigraphState(g)
    counts = [0]
    worst = 0
    for k, (u, v) in enumerate(seq.steps, start=1):
        _, offender, peak = state.contract(u, v, d)
        worst = max(worst, peak)
        if offender is not None:
            return VerificationReport(
                ok=False,
                width=d,
                max_red_degree=worst,
                red_edge_counts=counts,
                failed_step=k,
                failed_vertex=offender,
                complete=seq.is_complete,
            )
        counts.append(state.red_edges)
    return VerificationReport(
        ok=True,
        width=d,
        max_red_degree=worst,
        red_edge_counts=counts,
        complete=seq.is_complete,
    )
