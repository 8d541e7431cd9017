"""Recognition of graphs of twin-width at most 1.

Prime quotients are handled by guessing the vertex ``s`` that is last to
meet the red edge (one of at most four extremal vertices of the realiser)
and peeling doubly extremal vertices off the realiser, recursing on the
unique splitter when one side shrinks to a single vertex.
"""

from __future__ import annotations

import gc
import random
from dataclasses import dataclass, field
from itertools import combinations

from .graph import ContractionSequence, Graph, PreconditionError, Trigraph, VerificationReport, contract, verify_sequence
from .modular import MDNode, assemble_sequence, modular_decomposition
from .permgraph import Realiser, build_realiser_from_sequence, extremal_list, prime_realiser, realises

__all__ = [
    "PeelState",
    "RecognitionOutcome",
    "peel_prime",
    "peel_states",
    "recognize_prime",
    "recognize",
    "check_sequence_theory",
    "TheoryReport",
    "NOT_PERMUTATION",
    "PEEL_FAILED",
    "STRUCTURAL",
]

NOT_PERMUTATION = "not-permutation"
PEEL_FAILED = "prime-node-peel-failed"
STRUCTURAL = "structural"


@dataclass
class PeelState:
    """Cursor state of one peeling level.

    ``C`` is an inclusive position range in the order ``x`` where the
    splitter is extremal; ``A`` (left of the splitter) and ``B`` (right of
    it) are ranges in the other order ``y``.  Empty ranges have ``lo > hi``.
    """

    splitter: int
    x: str
    A: tuple[int, int]
    B: tuple[int, int]
    C: tuple[int, int]
    pi: list[int] = field(default_factory=list)
    side: list[int] = field(default_factory=list)  # 0 for A, 1 for B
    next_side: int | None = None  # side that held the next level's splitter

    @property
    def marks(self) -> list[int]:
        return [self.splitter]


@dataclass
class RecognitionOutcome:
    accepted: bool
    sequence: ContractionSequence | None = None
    reason: str | None = None
    node: MDNode | None = None
    report: VerificationReport | None = None
    tree: MDNode | None = None

    @property
    def reason_tag(self) -> str | None:
        if self.reason == PEEL_FAILED and self.node is not None:
            return f"{PEEL_FAILED}({self.node.min_leaf})"
        return self.reason

    def __bool__(self) -> bool:
        return self.accepted


def _size(r: tuple[int, int]) -> int:
    return r[1] - r[0] + 1


def peel_states(r: Realiser, s: int, rng: random.Random | None = None) -> list[PeelState] | None:
    """Run the peeling recursion; one state per level, or ``None`` on rejection."""
    k = r.n
    orders = {"sigma": r.sigma_order, "tau": r.tau_order}
    pos = {"sigma": [p - 1 for p in r.sigma], "tau": [p - 1 for p in r.tau]}
    other = {"sigma": "tau", "tau": "sigma"}
    if pos["sigma"][s] in (0, k - 1):
        x = "sigma"
    elif pos["tau"][s] in (0, k - 1):
        x = "tau"
    else:
        raise PreconditionError(f"vertex {s} is not extremal")
    y = other[x]
    c = (1, k - 1) if pos[x][s] == 0 else (0, k - 2)
    py = pos[y][s]
    state = PeelState(s, x, (0, py - 1), (py + 1, k - 1), c)
    levels = [state]
    while True:
        ox, oy = orders[state.x], orders[other[state.x]]
        px_, py_ = pos[state.x], pos[other[state.x]]
        (alo, ahi), (blo, bhi), (clo, chi) = state.A, state.B, state.C
        pi, side = state.pi, state.side
        while clo <= chi:
            cands = []
            for v in (ox[clo], ox[chi]) if clo < chi else (ox[clo],):
                q = py_[v]
                if alo <= ahi and (q == alo or q == ahi):
                    cands.append((px_[v], v, 0))
                elif blo <= bhi and (q == blo or q == bhi):
                    cands.append((px_[v], v, 1))
            if not cands:
                break
            _, v, sd = rng.choice(cands) if rng is not None and len(cands) > 1 else cands[0]
            q = py_[v]
            if sd == 0:
                if q == alo:
                    alo += 1
                else:
                    ahi -= 1
            else:
                if q == blo:
                    blo += 1
                else:
                    bhi -= 1
            if px_[v] == clo:
                clo += 1
            else:
                chi -= 1
            pi.append(v)
            side.append(sd)
        state.A, state.B, state.C = (alo, ahi), (blo, bhi), (clo, chi)
        na, nb = max(0, ahi - alo + 1), max(0, bhi - blo + 1)
        if na == 0 and nb == 0:
            return levels
        if na == 1 and nb >= 2:
            s2 = oy[alo]
            m = (blo, bhi)
            state.next_side = 0
        elif nb == 1 and na >= 2:
            s2 = oy[blo]
            m = (alo, ahi)
            state.next_side = 1
        else:
            return None
        # the splitter is extremal for M in the old y order; the roles swap
        p2 = px_[s2]
        state = PeelState(s2, other[state.x], (clo, p2 - 1), (p2 + 1, chi), m)
        levels.append(state)


def _translate(levels: list[PeelState], k: int) -> list[tuple[int, int]]:
    """Turn the peeled lists into contractions, deepest level first."""
    steps: list[tuple[int, int]] = []
    nxt = k

    def merge(a, b):
        nonlocal nxt
        if a is None:
            return b
        steps.append((a, b))
        nxt += 1
        return nxt - 1

    z = None
    for j in range(len(levels) - 1, -1, -1):
        lv = levels[j]
        groups: list[int | None] = [None, None]
        if lv.next_side is not None:
            groups[lv.next_side] = levels[j + 1].splitter
            groups[1 - lv.next_side] = z
        # walking backwards, each vertex joins the red-edge end on its side
        for v, sd in zip(reversed(lv.pi), reversed(lv.side)):
            groups[sd] = merge(groups[sd], v)
        z = merge(groups[0], groups[1])
    merge(z, levels[0].splitter)
    return steps


def _small_search(h: Graph, s: int) -> list[tuple[int, int]] | None:
    """Exhaustive search for tiny graphs: a 1-sequence with ``s`` last to touch red."""
    def go(t: Trigraph, touched: frozenset, steps):
        if len(t.vertices) == 1:
            return steps
        for u, v in combinations(sorted(t.vertices), 2):
            t2 = contract(t, u, v)
            if t2.max_red_degree() > 1:
                continue
            now = touched.union(*(t2.parts[x] for x in t2.vertices if t2.red_degree(x)))
            if s in touched and now != touched:
                continue
            got = go(t2, now, steps + [(u, v)])
            if got is not None:
                return got
        return None

    return go(Trigraph.from_graph(h), frozenset(), [])


def peel_prime(h: Graph, r: Realiser, s: int, seed=None, check: bool = True) -> ContractionSequence | None:
    """1-contraction sequence of prime ``h`` with ``s`` last to meet the red edge.

    Returns ``None`` when the peeling gets stuck, which certifies that no
    such sequence exists.  ``seed`` randomises the choice among
    simultaneously doubly extremal vertices.
    """
    if r.n != h.n:
        raise PreconditionError("realiser size does not match the graph")
    if check and not realises(h, r):
        raise PreconditionError("r does not realise h")
    if not 0 <= s < h.n:
        raise PreconditionError(f"vertex {s} out of range")
    if s not in extremal_list(r):
        raise PreconditionError(f"vertex {s} is not extremal")
    if h.n <= 4:
        steps = _small_search(h, s)
        return None if steps is None else ContractionSequence(h.n, steps, 1)
    rng = random.Random(seed) if seed is not None else None
    levels = peel_states(r, s, rng)
    if levels is None:
        return None
    return ContractionSequence(h.n, _translate(levels, h.n), 1)


def recognize_prime(
    h: Graph, r: Realiser | None = None, seed=None, verify: bool = True
) -> ContractionSequence | None:
    """Width-1 sequence for a prime graph, or ``None`` if its twin-width exceeds 1.

    With ``verify`` each candidate is simulated before it is returned;
    :func:`recognize` skips this because it verifies the assembled result.
    """
    if h.n < 4:
        raise PreconditionError("prime graphs have at least 4 vertices")
    if r is None:
        r = prime_realiser(h)
        if r is None:
            return None
    for s in extremal_list(r):
        seq = peel_prime(h, r, s, seed=seed, check=False)
        if seq is not None and (not verify or verify_sequence(h, seq, 1).ok):
            return seq
    return None


def _recognize(g: Graph, seed=None) -> RecognitionOutcome:
    if g.n <= 1:
        seq = ContractionSequence(g.n, [], 1)
        return RecognitionOutcome(True, seq, report=verify_sequence(g, seq, 1))
    tree = modular_decomposition(g)
    prime_seqs = {}
    for node in tree.prime_nodes():
        q = node.quotient
        r = prime_realiser(q)
        if r is None:
            return RecognitionOutcome(False, reason=NOT_PERMUTATION, node=node, tree=tree)
        seq = recognize_prime(q, r, seed=seed, verify=False)
        if seq is None:
            return RecognitionOutcome(False, reason=PEEL_FAILED, node=node, tree=tree)
        prime_seqs[node] = seq
    seq = assemble_sequence(tree, prime_seqs, g.n)
    report = verify_sequence(g, seq, 1)
    if not report.ok:
        return RecognitionOutcome(False, reason=STRUCTURAL, report=report, tree=tree)
    return RecognitionOutcome(True, seq, report=report, tree=tree)


def recognize(g: Graph, seed=None) -> RecognitionOutcome:
    """Decide twin-width at most 1; accepted outcomes carry a verified sequence."""
    # the run allocates many short-lived containers; cyclic collection only adds overhead
    enabled = gc.isenabled()
    gc.disable()
    try:
        return _recognize(g, seed)
    finally:
        if enabled:
            gc.enable()


@dataclass
class TheoryReport:
    ok: bool
    failures: list[str] = field(default_factory=list)

    def __bool__(self) -> bool:
        return self.ok


def _underlying(t: Trigraph) -> dict[int, set[int]]:
    out: dict[int, set[int]] = {x: set() for x in t.vertices}
    for a, b in t.black | t.red:
        out[a].add(b)
        out[b].add(a)
    return out


def _red_adj(t: Trigraph) -> dict[int, set[int]]:
    out: dict[int, set[int]] = {x: set() for x in t.vertices}
    for a, b in t.red:
        out[a].add(b)
        out[b].add(a)
    return out


def _representatives(g: Graph, t: Trigraph) -> dict[int, int]:
    """One original vertex per trigraph vertex, following the red edge if any."""
    reps: dict[int, int] = {}
    red = _red_adj(t)
    for x in sorted(t.vertices):
        if x in reps:
            continue
        reds = red[x]
        if not reds:
            reps[x] = min(t.parts[x])
            continue
        (w,) = tuple(reds)
        pw = t.parts[w]
        a, b = min((a, b) for a in t.parts[x] for b in g.adj[a] if b in pw)
        reps[x], reps[w] = a, b
    return reps


def _embeds(small: dict[int, set[int]], big: dict[int, set[int]], phi: dict[int, int]) -> bool:
    keys = list(small)
    for i, x in enumerate(keys):
        for y in keys[i + 1:]:
            if (y in small[x]) != (phi[y] in big[phi[x]]):
                return False
    return True


def _consecutive(pos: dict[int, int], a: int, b: int, verts) -> bool:
    lo, hi = sorted((pos[a], pos[b]))
    return not any(lo < pos[v] < hi for v in verts)


def check_sequence_theory(g: Graph, seq: ContractionSequence, r: Realiser | None = None) -> TheoryReport:
    """Check the structural properties of a 1-sequence of a prime graph.

    (i) every intermediate trigraph has exactly one red edge; (ii) the first
    pair is consecutive in one order and one apart in the other; (iii) the
    underlying graphs form an induced-subgraph chain, with each trigraph
    embedded in ``g`` by the representative construction; (iv) contracted
    pairs and red-edge ends are consecutive in the orders induced on the
    representatives by the realiser built from ``seq``.
    """
    fails: list[str] = []
    rep = verify_sequence(g, seq, 1)
    if not rep.ok or not rep.complete:
        return TheoryReport(False, ["sequence is not a complete 1-sequence"])
    n = g.n
    if r is None:
        r = prime_realiser(g)
        if r is None:
            return TheoryReport(False, ["graph is not a permutation graph"])
    if seq.steps:
        u, v = seq.steps[0]
        ds, dt = abs(r.sigma[u] - r.sigma[v]), abs(r.tau[u] - r.tau[v])
        if sorted((ds, dt)) != [1, 2]:
            fails.append(f"(ii) first pair {u},{v} has gaps sigma={ds} tau={dt}")
    built = build_realiser_from_sequence(g, seq)
    t = Trigraph.from_graph(g)
    under = _underlying(t)
    for i, (a, b) in enumerate(seq.steps):
        t2 = contract(t, a, b)
        size = len(t2.vertices)
        under2 = _underlying(t2)
        reds = len(t2.red)
        if 2 <= size <= n - 1 and reds != 1:
            fails.append(f"(i) step {i}: {reds} red edges")
        z = t2.next_id - 1
        if not any(_embeds(under2, under, {**{x: x for x in under2 if x != z}, z: c}) for c in (a, b)):
            fails.append(f"(iii) step {i}: trigraph is not an induced subgraph of its predecessor")
        reps = _representatives(g, t2)
        if len(set(reps.values())) != size or not _embeds(
            under2, {x: g.adj[x] for x in range(n)}, reps
        ):
            fails.append(f"(iii) step {i}: representatives do not induce the trigraph")
        # (iv) on the trigraph before this contraction
        prev_reps = _representatives(g, t)
        sp = {x: built.sigma[prev_reps[x]] for x in prev_reps}
        tp = {x: built.tau[prev_reps[x]] for x in prev_reps}
        if not (_consecutive(sp, a, b, t.vertices) or _consecutive(tp, a, b, t.vertices)):
            fails.append(f"(iv) step {i}: contracted pair {a},{b} not consecutive")
        for x, w in t.red:
            if not (_consecutive(sp, x, w, t.vertices) or _consecutive(tp, x, w, t.vertices)):
                fails.append(f"(iv) step {i}: red edge {x},{w} not consecutive")
        t, under = t2, under2
    return TheoryReport(not fails, fails)
