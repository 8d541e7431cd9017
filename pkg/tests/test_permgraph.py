import itertools
import random

import pytest

from conftest import C, K, P, atlas, strong_modules
from tww.generators import random_realiser_graph, relabel
from tww.graph import ContractionSequence, Graph, complement, verify_sequence
from tww.modular import modular_decomposition
from tww.permgraph import (
    Realiser,
    build_realiser_from_sequence,
    compute_realiser,
    count_inversions,
    diagram_layout,
    extremal_vertices,
    graph_from_realiser,
    is_common_interval_module,
    prime_realiser,
    realises,
    sequence_interval_violations,
)
from tww.tww1 import recognize

P4_REALISER = Realiser((1, 2, 3, 4), (2, 4, 1, 3))


def _is_comparability(g):
    edges = g.edges()
    for bits in range(1 << len(edges)):
        arcs = {(u, v) if bits >> i & 1 else (v, u) for i, (u, v) in enumerate(edges)}
        if all((a, c) in arcs for a, b in arcs for b2, c in arcs if b == b2 and a != c):
            return True
    return False


def _brute_is_permutation(g):
    # permutation graphs are exactly the comparability graphs with comparability complements
    return _is_comparability(g) and _is_comparability(complement(g))


def test_realiser_validation():
    with pytest.raises(ValueError):
        Realiser((1, 1), (1, 2))
    with pytest.raises(ValueError):
        Realiser((1, 2), (1,))
    r = Realiser.from_orders([2, 0, 1], [1, 2, 0])
    assert r.sigma_order == [2, 0, 1] and r.tau_order == [1, 2, 0]


def test_graph_from_realiser_examples():
    ident = tuple(range(1, 6))
    assert graph_from_realiser(Realiser(ident, ident)).m == 0
    assert graph_from_realiser(Realiser(ident, ident[::-1])) == K(5)
    g = graph_from_realiser(P4_REALISER)
    assert g.m == 3 and sorted(len(a) for a in g.adj) == [1, 1, 2, 2]


def test_compute_realiser_examples():
    for g in (P(4), C(4)):
        r = compute_realiser(g)
        assert r is not None and graph_from_realiser(r) == g
    assert compute_realiser(C(5)) is None
    assert graph_from_realiser(Realiser((1, 2, 3, 4), (3, 4, 1, 2))) == Graph(4, [(0, 2), (0, 3), (1, 2), (1, 3)])


def test_extremal_examples():
    assert extremal_vertices(Realiser((1,), (1,))) == {0}
    ident = tuple(range(1, 6))
    assert extremal_vertices(Realiser(ident, ident[::-1])) == {0, 4}
    assert extremal_vertices(P4_REALISER) == {0, 1, 2, 3}


def test_common_interval_examples():
    g = graph_from_realiser(P4_REALISER)
    assert is_common_interval_module(g, P4_REALISER, range(4), check=True)
    assert all(is_common_interval_module(g, P4_REALISER, {v}, check=True) for v in range(4))
    # 0 and 1 are consecutive in sigma but not in tau
    assert not is_common_interval_module(g, P4_REALISER, {0, 1})


def test_diagram_examples():
    ident = tuple(range(1, 5))
    segs = diagram_layout(Realiser(ident, ident))
    assert all(s.top_x == s.bottom_x for s in segs)
    segs = diagram_layout(Realiser(ident, ident[::-1]))
    crossings = sum((a.top_x - b.top_x) * (a.bottom_x - b.bottom_x) < 0 for a, b in itertools.combinations(segs, 2))
    assert crossings == 6
    segs = diagram_layout(P4_REALISER)
    crossings = sum((a.top_x - b.top_x) * (a.bottom_x - b.bottom_x) < 0 for a, b in itertools.combinations(segs, 2))
    assert crossings == 3


def test_count_inversions_matches_quadratic():
    rng = random.Random(1)
    for n in (0, 1, 5, 64, 65, 300):
        perm = list(range(n))
        rng.shuffle(perm)
        assert count_inversions(perm) == sum(perm[i] > perm[j] for i in range(n) for j in range(i + 1, n))


def test_atlas_round_trip_and_duality():
    for g in atlas()[1:]:
        r = compute_realiser(g)
        if g.n <= 5:
            assert (r is not None) == _brute_is_permutation(g)
        if r is None:
            continue
        assert graph_from_realiser(r) == g
        assert graph_from_realiser(r.complement()) == complement(g)
        for m in strong_modules(g):
            assert is_common_interval_module(g, r, m)


def test_random_realiser_graphs():
    rng = random.Random(7)
    for i in range(60):
        g = random_realiser_graph(rng.randint(2, 120), rng, sparse=i % 2 == 0)
        r = compute_realiser(g)
        assert r is not None and graph_from_realiser(r) == g
        assert realises(complement(g), r.complement())


def test_prime_extremal_invariance_under_symmetries():
    for g in atlas()[1:]:
        t = modular_decomposition(g)
        if t.kind != "prime" or not all(c.is_leaf for c in t.children):
            continue
        r = prime_realiser(g)
        if r is None:
            continue
        ext = extremal_vertices(r)
        for s in (r.swapped(), r.reversed(), r.swapped().reversed()):
            assert extremal_vertices(s) == ext
            assert realises(g, s)


def test_build_realiser_examples():
    r = build_realiser_from_sequence(K(2), ContractionSequence(2, [(0, 1)], 1))
    assert graph_from_realiser(r) == K(2)
    seq = ContractionSequence(4, [(0, 1), (4, 2), (5, 3)], 1)
    r = build_realiser_from_sequence(P(4), seq)
    assert graph_from_realiser(r) == P(4)
    assert sequence_interval_violations(P(4), seq, r) == []
    seq = ContractionSequence(3, [(0, 2), (3, 1)], 1)
    r = build_realiser_from_sequence(P(3), seq)
    assert graph_from_realiser(r) == P(3)
    assert is_common_interval_module(P(3), r, {0, 2})


def test_build_realiser_rejects_bad_sequences():
    with pytest.raises(ValueError):
        build_realiser_from_sequence(C(5), ContractionSequence(5, [(0, 1), (5, 2), (6, 3), (7, 4)], 1))


def test_build_realiser_on_recognised_atlas_graphs():
    for g in atlas()[1:]:
        out = recognize(g)
        if not out.accepted:
            continue
        r = build_realiser_from_sequence(g, out.sequence)
        assert graph_from_realiser(r) == g
        assert sequence_interval_violations(g, out.sequence, r) == []
