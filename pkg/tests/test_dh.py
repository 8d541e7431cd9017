import random

import pytest

from conftest import C, K, P, atlas, is_connected
from tww.dh import (
    FALSE_TWIN,
    PENDANT,
    TRUE_TWIN,
    EliminationOrder,
    InvalidOrderError,
    asteroidal_triple,
    classify_by_split_structure,
    classify_dh_twin_width,
    dh_2_sequence,
    dh_elimination,
    is_at_free,
    pendant_red_violations,
    split_tree_dh,
)
from tww.generators import named_graph, random_dh, random_tree, spider
from tww.graph import Graph, PreconditionError, verify_sequence
from tww.modular import modular_decomposition
from tww.oracle import brute_force_tww
from tww.permgraph import compute_realiser

STAR3 = Graph(4, [(0, 1), (0, 2), (0, 3)])


def _apply(g, order):
    """Replay the removals by brute force; returns the surviving vertices."""
    adj = [set(a) for a in g.adj]
    alive = set(range(g.n))
    for v, kind, w in order.steps:
        if kind == PENDANT:
            assert adj[v] == {w}
        elif kind == TRUE_TWIN:
            assert adj[v] - {w} == adj[w] - {v} and w in adj[v]
        else:
            assert kind == FALSE_TWIN and adj[v] == adj[w]
        alive.discard(v)
        for u in adj[v]:
            adj[u].discard(v)
        adj[v] = set()
    return alive


def test_elimination_examples():
    for seed in range(10):
        t = random_tree(30, seed)
        order = dh_elimination(t)
        assert order is not None and _apply(t, order) == {order.last}
    for name in ("c5", "gem", "house", "domino", "c6"):
        assert dh_elimination(named_graph(name)) is None


def test_elimination_requires_connected():
    with pytest.raises(PreconditionError):
        dh_elimination(Graph(3, [(0, 1)]))


def test_split_tree_examples():
    t = split_tree_dh(P(4), dh_elimination(P(4)))
    assert len(t.internal_nodes) == 2 and all(t.kind[x] == "star" for x in t.internal_nodes)
    assert t.is_caterpillar() and t.accessibility_graph() == P(4)
    t = split_tree_dh(K(4), dh_elimination(K(4)))
    assert [t.kind[x] for x in t.internal_nodes] == ["clique"]
    t = split_tree_dh(STAR3, dh_elimination(STAR3))
    (x,) = t.internal_nodes
    assert t.kind[x] == "star" and t.center[x] == 0


def test_split_tree_rejects_invalid_order():
    bad = EliminationOrder(4, [(1, PENDANT, 2), (0, PENDANT, 2), (2, PENDANT, 3)], 3)
    with pytest.raises(InvalidOrderError):
        split_tree_dh(P(4), bad)
    with pytest.raises(InvalidOrderError):
        dh_2_sequence(P(4), bad)


def test_classify_examples():
    assert classify_dh_twin_width(STAR3).width == 0
    assert classify_dh_twin_width(P(4)).width == 1
    res = classify_dh_twin_width(spider())
    assert res.width == 2 and res.report.ok
    assert classify_dh_twin_width(named_graph("gem")).label == "not-DH"


def test_split_structure_examples():
    for g, want in ((K(4), 0), (P(4), 1), (spider(), 2)):
        assert classify_by_split_structure(split_tree_dh(g, dh_elimination(g))) == want


def test_split_structure_rejects_non_canonical():
    t = split_tree_dh(K(4), dh_elimination(K(4)))
    (x,) = t.internal_nodes
    # split the clique into two adjacent cliques by hand
    y = t._new_node("clique")
    for leaf in (2, 3):
        t._unlink(x, leaf)
        t._link(y, leaf)
    t._link(x, y)
    assert t.accessibility_graph() == K(4)
    with pytest.raises(ValueError):
        classify_by_split_structure(t)


def test_dh_2_sequence_examples():
    for seed in range(20):
        g = random_tree(random.Random(seed).randint(2, 50), seed)
        seq = dh_2_sequence(g, dh_elimination(g), check=True)
        assert verify_sequence(g, seq, 2).ok
    g = spider()
    seq = dh_2_sequence(g, dh_elimination(g))
    assert verify_sequence(g, seq, 2).ok and brute_force_tww(g) == 2
    seq = dh_2_sequence(K(5), dh_elimination(K(5)))
    assert verify_sequence(K(5), seq, 2).ok


def test_at_free_examples():
    assert not is_at_free(spider())
    assert set(asteroidal_triple(spider())) == {2, 4, 6}
    assert is_at_free(C(5))
    for g in atlas():
        if compute_realiser(g) is not None:
            assert is_at_free(g)


def test_atlas_sweep():
    dh = 0
    for g in atlas()[1:]:
        if not is_connected(g):
            continue
        order = dh_elimination(g)
        res = classify_dh_twin_width(g)
        if order is None:
            assert not res.is_dh
            continue
        dh += 1
        tree = split_tree_dh(g, order)
        assert tree.is_canonical(), tree.canonical_violations()
        assert tree.accessibility_graph() == g
        assert res.width == brute_force_tww(g) == classify_by_split_structure(tree)
        assert verify_sequence(g, res.sequence, res.width).ok
        assert is_at_free(g) == (compute_realiser(g) is not None)
        seq = dh_2_sequence(g, order)
        assert pendant_red_violations(g, seq) == []
    assert dh == 409


def test_disconnected_classification_takes_max():
    g = Graph(11, P(4).edges() + [(a + 4, b + 4) for a, b in spider().edges()])
    res = classify_dh_twin_width(g)
    assert res.width == 2 and sorted(res.components) == [1, 2]
    assert verify_sequence(g, res.sequence, 2).ok
    g = Graph(7, P(4).edges() + [(4, 5), (5, 6), (4, 6)])
    assert classify_dh_twin_width(g).width == 1


def test_random_dh_prime_at_free_trees_are_caterpillars():
    seen = 0
    for seed in range(400):
        g = random_dh(random.Random(seed).randint(5, 25), seed, weights=(3, 1, 1))
        t = modular_decomposition(g)
        if t.kind != "prime" or not all(c.is_leaf for c in t.children):
            continue
        if classify_dh_twin_width(g).width == 1:
            seen += 1
            assert split_tree_dh(g, dh_elimination(g)).is_caterpillar()
    assert seen >= 5
