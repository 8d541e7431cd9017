import random

import pytest

from conftest import C, K, P, atlas, strong_modules
from tww.generators import named_graph, random_graph, random_tww1
from tww.graph import ContractionSequence, Graph, verify_sequence
from tww.modular import (
    PARALLEL,
    PRIME,
    SERIES,
    MissingPrimeSequence,
    NotModularError,
    assemble_sequence,
    is_cograph,
    is_module,
    modular_decomposition,
    quotient,
)
from tww.tww1 import recognize_prime


def test_examples():
    t = modular_decomposition(P(4))
    assert t.kind == PRIME and [c.vertex for c in t.children] == [0, 1, 2, 3]
    t = modular_decomposition(K(3))
    assert t.kind == SERIES and len(t.children) == 3
    t = modular_decomposition(C(5))
    assert t.kind == PRIME and t.size == 5


def test_quotient_examples():
    assert quotient(K(3), [{0, 1}, {2}]) == K(2)
    assert quotient(P(4), [{0}, {1}, {2}, {3}]) == P(4)
    # C5 plus a true twin 5 of vertex 0
    g = Graph(6, C(5).edges() + [(5, 0), (5, 1), (5, 4)])
    parts = [{0, 5}, {1}, {2}, {3}, {4}]
    assert quotient(g, parts) == C(5)
    with pytest.raises(NotModularError) as err:
        quotient(P(4), [{0, 1}, {2}, {3}])
    assert err.value.splitter == 2


def test_is_cograph_examples():
    assert is_cograph(modular_decomposition(K(3)))
    assert not is_cograph(modular_decomposition(P(4)))
    gem = modular_decomposition(named_graph("gem"))
    assert not is_cograph(gem)
    assert gem.kind == SERIES and any(c.kind == PRIME for c in gem.children)


def _check_tree(g, t):
    assert sorted(t.vertices) == list(range(g.n))
    strong = strong_modules(g)
    for node in t.walk():
        assert frozenset(node.vertices) in strong
        if node.is_leaf:
            continue
        assert len(node.children) >= 2
        for c in node.children:
            assert c.kind != node.kind or node.kind == PRIME
        if node.kind == PRIME:
            q = node.quotient
            assert q.n >= 4 and q.n == len(node.children)
            for s in strong_modules(q):
                assert len(s) in (1, q.n)
    # every strong module appears as a node
    nodes = {frozenset(node.vertices) for node in t.walk()}
    assert strong <= nodes


def test_against_brute_force_on_atlas():
    for g in atlas()[1:]:
        _check_tree(g, modular_decomposition(g))


def test_random_relabelled_graphs():
    rng = random.Random(2)
    for _ in range(150):
        n = rng.randint(2, 9)
        g = random_graph(n, rng.choice([0.2, 0.5, 0.8]), rng)
        _check_tree(g, modular_decomposition(g))


def _rebuild(g, t):
    """Reconstruct the edge set from the tree alone."""
    edges = set()
    for node in t.walk():
        if node.is_leaf:
            continue
        leaves = [c.vertices for c in node.children]
        for i, a in enumerate(leaves):
            for j in range(i + 1, len(leaves)):
                if node.kind == SERIES or (node.kind == PRIME and node.quotient.has_edge(i, j)):
                    edges.update((min(x, y), max(x, y)) for x in a for y in leaves[j])
    return Graph(g.n, edges)


def test_round_trip_from_quotients():
    rng = random.Random(4)
    for _ in range(100):
        g = random_graph(rng.randint(1, 30), rng.random(), rng)
        assert _rebuild(g, modular_decomposition(g)) == g


def test_deterministic_child_order():
    g = named_graph("gem")
    a, b = modular_decomposition(g).to_json(), modular_decomposition(g).to_json()
    assert a == b
    t = modular_decomposition(Graph(5, [(0, 1), (3, 4)]))
    assert t.kind == PARALLEL and [c.min_leaf for c in t.children] == [0, 2, 3]


def test_is_module():
    assert is_module(P(4), {1, 2}) is False
    assert is_module(K(4), {1, 2})


def test_assemble_examples():
    t = modular_decomposition(K(4))
    seq = assemble_sequence(t, {})
    rep = verify_sequence(K(4), seq, 0)
    assert rep.ok and rep.max_red_degree == 0
    p4seq = ContractionSequence(4, [(0, 1), (4, 2), (5, 3)], 1)
    t = modular_decomposition(P(4))
    assert assemble_sequence(t, {t: p4seq}).steps == p4seq.steps
    gem = named_graph("gem")
    t = modular_decomposition(gem)
    (prime,) = t.prime_nodes()
    seq = assemble_sequence(t, {prime: recognize_prime(prime.quotient)})
    assert verify_sequence(gem, seq, 1).ok and seq.claimed_width == 1


def test_assemble_missing_prime():
    t = modular_decomposition(P(4))
    with pytest.raises(MissingPrimeSequence):
        assemble_sequence(t, {})


def test_large_input_covers_all_vertices():
    g = random_tww1(20000, seed=1)
    t = modular_decomposition(g)
    assert t.size == g.n
    assert sum(1 for node in t.walk() if node.is_leaf) == g.n
