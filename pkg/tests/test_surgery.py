from __future__ import annotations

import pytest

from fancross.catalog import entry, k7_embeddings
from fancross.drawing import from_drawing
from fancross.embedding import Planarization, validate
from fancross.isomorphism import map_isomorphic
from fancross.surgery import (
    CrossPoint,
    Follow,
    Pierce,
    RouteError,
    SurgeryError,
    Vertex,
    common_faces,
    corridor_route,
    delete_edge,
    induced,
    insert_edge_in_face,
    reroute_along,
    reroute_in_corridor,
)


def guide_fixture(k: int):
    """Triangle 0-1-2 plus a vertex 3 below {0,1}; k edges from 3 cross {0,1}.

    Edge ids: 0 = {0,1}, 1 = {0,2}, 2 = {1,2}, 3 = {0,3}, then the crossers.
    """
    pts = [(0, 0), (10, 0), (5, 8), (5, -5), (3, 2), (7, 2)]
    edges = [(0, 1), (0, 2), (1, 2), (0, 3)] + [(3, 4), (3, 5)][:k]
    return from_drawing(pts[: 4 + k], edges)


@pytest.mark.parametrize("k", [0, 1, 2])
def test_follow_spanning_k_crossers(k):
    emb = guide_fixture(k)
    route = [
        Follow(0, Vertex(0), Vertex(1), side="right"),
        Follow(2, Vertex(1), Vertex(2), side="right"),
    ]
    out = reroute_along(emb, 1, route)
    assert validate(out).ok
    # the redrawn {0,2} runs below {0,1} and crosses exactly its crossers, in order
    assert out.crossers(1) == list(range(4, 4 + k))
    assert out.crossing_count() == 2 * k


@pytest.mark.parametrize("side", ["left", "right"])
def test_identity_follow(side):
    emb = entry("k5_c")
    for e in range(emb.m):
        if emb.crossings[e]:
            continue
        a, b = emb.edges[e]
        # an uncrossed edge redrawn alongside itself is unchanged
        out = reroute_along(emb, e, [Follow(e, Vertex(a), Vertex(b), side=side)])
        assert (out.crossings, out.rotations) == (emb.crossings, emb.rotations)
        assert _outer_face(out) == _outer_face(emb)


def _outer_face(emb):
    pl = Planarization(emb)
    return set(pl.faces[pl.outer_face])


def test_route_must_end_at_other_endpoint():
    emb = guide_fixture(2)
    # stops at the crossing point of {0,1} and edge 4 instead of vertex 2
    route = [Follow(0, Vertex(0), CrossPoint(4), side="left"), Pierce(4)]
    with pytest.raises(RouteError):
        reroute_along(emb, 1, route)


def test_route_must_start_at_endpoint():
    emb = guide_fixture(1)
    with pytest.raises(RouteError):
        reroute_along(emb, 1, [Follow(2, Vertex(1), Vertex(2))])


def test_delete_and_reinsert(k4_planar):
    smaller = delete_edge(k4_planar, 5)
    assert smaller.m == 5 and validate(smaller).ok
    pl = Planarization(smaller)
    faces = common_faces(pl, 2, 3)
    assert faces
    back = insert_edge_in_face(smaller, 2, 3, faces[0])
    assert map_isomorphic(back, k4_planar)


def test_delete_crossed_edge_removes_crossing(k4_crossed):
    out = delete_edge(k4_crossed, 4)
    assert out.crossing_count() == 0
    assert validate(out).ok


def test_insert_existing_edge_fails(k4_planar):
    with pytest.raises(SurgeryError):
        insert_edge_in_face(k4_planar, 0, 1, 0)


def test_corridor_route_respects_allowed_edges():
    emb = guide_fixture(2)
    _, path, _, _ = corridor_route(emb, 1, {4: None, 5: None})
    assert {d.edge for d in path} - {1} <= {4, 5}
    # with nothing allowed the edge stays uncrossed
    assert reroute_in_corridor(emb, 1, {}).crossers(1) == []


def test_induced_k7_restrictions():
    from fancross.catalog import k5_embeddings

    for k7, k5 in zip(k7_embeddings(), k5_embeddings()):
        assert map_isomorphic(induced(k7, range(5)), k5)


def test_induced_requires_ascending_order():
    with pytest.raises(SurgeryError):
        induced(entry("k5_a"), [2, 1, 0])
