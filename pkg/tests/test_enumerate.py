from __future__ import annotations

import pytest

from fancross.catalog import k5_embeddings
from fancross.embedding import Graph, validate
from fancross.enumerate import (
    FILTERS,
    EnumSpec,
    InfeasibleSpec,
    brute_force_embeddings,
    enumerate_embeddings,
    extend_embedding,
    raw_space,
)
from fancross.isomorphism import canonical_code, map_isomorphic
from fancross.patterns import is_adjacency_crossing, is_fan_crossing, is_one_planar

from conftest import WHEEL4, complete

C4 = Graph.from_edges(4, [(0, 1), (1, 2), (2, 3), (0, 3)])
TRIANGLE_PLUS_EDGE = Graph.from_edges(5, [(0, 1), (1, 2), (0, 2), (3, 4), (0, 3)])


def _keys(stream):
    return {(e.crossings, e.rotations) for e in stream}


@pytest.mark.parametrize(
    "graph,k",
    [(complete(3), 0), (C4, 1), (complete(4), 2), (TRIANGLE_PLUS_EDGE, 2)],
    ids=["K3", "C4", "K4", "triangle+pendant-path"],
)
def test_insertion_matches_generate_and_test(graph, k):
    assert _keys(enumerate_embeddings(EnumSpec(graph, k))) == _keys(brute_force_embeddings(graph, k))


def test_k4_counts():
    # two planar rotation systems, then one crossing per pair of opposite edges
    # with two crossing signs: 2 + 3 * 2
    assert len(list(enumerate_embeddings(EnumSpec(complete(4), 1)))) == 8
    assert len(list(enumerate_embeddings(EnumSpec(complete(4), 1, dedupe=True)))) == 2


def test_outputs_are_valid_and_within_budget():
    for emb in enumerate_embeddings(EnumSpec(WHEEL4, 2)):
        assert validate(emb).ok
        assert emb.crossing_count() <= 2
        assert emb.graph == WHEEL4


def test_dedupe_keeps_one_per_class():
    out = list(enumerate_embeddings(EnumSpec(WHEEL4, 2, dedupe=True)))
    codes = [canonical_code(e) for e in out]
    assert len(set(codes)) == len(codes)
    everything = {canonical_code(e) for e in enumerate_embeddings(EnumSpec(WHEEL4, 2))}
    assert everything == set(codes)


def test_k5_classes_contain_catalog():
    found = list(enumerate_embeddings(EnumSpec(complete(5), 5, dedupe=True)))
    assert len(found) == 5
    for cat in k5_embeddings():
        assert any(map_isomorphic(cat, e) for e in found)


def test_filters_agree_with_predicates():
    full = list(enumerate_embeddings(EnumSpec(complete(5), 4, dedupe=True)))
    for name, pred in [("fan-crossing", is_fan_crossing), ("one-planar", is_one_planar),
                       ("adjacency-crossing", is_adjacency_crossing)]:
        kept = {canonical_code(e) for e in enumerate_embeddings(EnumSpec(complete(5), 4, dedupe=True, filter=name))}
        assert kept == {canonical_code(e) for e in full if pred(e)}
    assert set(FILTERS) >= {"planar", "fan-planar"}


def test_infeasible_search_space():
    with pytest.raises(InfeasibleSpec):
        list(enumerate_embeddings(EnumSpec(complete(7), 10)))
    with pytest.raises(InfeasibleSpec):
        list(enumerate_embeddings(EnumSpec(complete(5), 5, ceiling=10)))


def test_ceiling_from_environment(monkeypatch):
    monkeypatch.setenv("FANCROSS_ENUM_CEILING", "5")
    with pytest.raises(InfeasibleSpec):
        list(enumerate_embeddings(EnumSpec(complete(4), 1)))


def test_disconnected_graph_rejected():
    with pytest.raises(InfeasibleSpec):
        list(enumerate_embeddings(EnumSpec(Graph.from_edges(4, [(0, 1), (2, 3)]), 0)))


def test_raw_space_counts():
    # K4: three non-adjacent pairs
    assert raw_space(complete(4), 1) == 1 + 3 * 2
    assert raw_space(complete(4), 0) == 1


def test_extend_embedding_adds_vertex():
    (tri,) = enumerate_embeddings(EnumSpec(complete(3), 0))
    out = list(extend_embedding(tri, [(0, 3), (1, 3), (2, 3)], 0))
    # the new vertex goes inside or outside the triangle
    assert len(out) == 2
    assert all(validate(e).ok and e.n == 4 and e.m == 6 for e in out)
