from itertools import product

import pytest

from parkbetti import (
    enumerate_parking_functions,
    generate_corpus,
    graph_to_text,
    is_parking_function,
    is_parking_function_bruteforce,
    maximal_parking_functions,
    mpf_count,
    parse_graph,
    spanning_tree_count,
)

from _oracles import mpf_oracle, pf_set_oracle


def test_recognizer_basics(k3, banana):
    assert is_parking_function(k3, (0, 0))
    assert not is_parking_function(k3, (1, 1))
    b3 = banana(3)
    assert not is_parking_function(b3, (3,))
    assert is_parking_function(b3, (2,))


def test_recognizer_rejects_bad_input(k3):
    with pytest.raises(ValueError):
        is_parking_function(k3, (0,))
    with pytest.raises(ValueError):
        is_parking_function(k3, (-1, 0))


def test_burning_agrees_with_bruteforce_on_full_boxes():
    for G in generate_corpus(4, max_edges=6, include_multi=True):
        for s in range(G.n):
            Gs = G.with_sink(s)
            box = [range(Gs.degrees[v]) for v in Gs.nonsink_vertices]
            for config in product(*box):
                assert is_parking_function(Gs, config) == is_parking_function_bruteforce(
                    Gs, config
                ), (graph_to_text(Gs), config)


def test_enumeration_known_sets(k3, kite, banana):
    assert enumerate_parking_functions(k3) == {(0, 0), (1, 0), (0, 1)}
    assert len(enumerate_parking_functions(kite)) == 8
    assert enumerate_parking_functions(banana(3)) == {(0,), (1,), (2,)}


def test_enumeration_counts_spanning_trees():
    for G in generate_corpus(4, max_edges=6, include_multi=True):
        for s in range(G.n):
            Gs = G.with_sink(s)
            assert len(enumerate_parking_functions(Gs)) == spanning_tree_count(Gs)


def test_enumeration_matches_oracle(kite):
    assert enumerate_parking_functions(kite) == pf_set_oracle(kite)


def test_maximal_known_sets(k3, kite, banana):
    assert maximal_parking_functions(k3) == {(1, 0), (0, 1)}
    assert maximal_parking_functions(kite) == {(0, 0, 2), (0, 1, 1), (1, 1, 0), (2, 0, 0)}
    assert maximal_parking_functions(banana(4)) == {(3,)}


def test_maximal_plus_unit_is_not_parking():
    for G in generate_corpus(4, max_edges=5, include_multi=True):
        for c in maximal_parking_functions(G):
            for i in range(len(c)):
                bumped = c[:i] + (c[i] + 1,) + c[i + 1:]
                assert not is_parking_function(G, bumped)


def test_mpf_values(kite, k3):
    assert mpf_count(kite) == 4
    assert {mpf_count(k3.with_sink(s)) for s in range(3)} == {2}
    assert mpf_count(parse_graph("v:2; a 1 2")) == 1
    assert mpf_count(parse_graph("v:1")) == 1


def test_mpf_sink_invariant_and_matches_oracle():
    for G in generate_corpus(4, max_edges=6, include_multi=True):
        counts = {mpf_count(G.with_sink(s)) for s in range(G.n)}
        assert len(counts) == 1, graph_to_text(G)
        assert counts.pop() == mpf_oracle(G)
