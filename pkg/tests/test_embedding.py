from __future__ import annotations

import pytest

from fancross.catalog import entry, k5_embeddings, k7_embeddings
from fancross.embedding import (
    LR,
    RL,
    Crossing,
    Dart,
    Embedding,
    Graph,
    Planarization,
    face_count,
    mirror,
    relabel,
    validate,
)


def test_plane_triangle_is_valid(triangle):
    assert validate(triangle).ok
    assert face_count(triangle) == 2


def test_k4_one_crossing_counts(k4_crossed):
    pl = Planarization(k4_crossed)
    v, e, f = pl.counts()
    assert (v, e) == (5, 8)
    assert v - e + f == 2
    assert k4_crossed.crossing_count() == 1


def test_k5_e_face_count():
    # 5 vertices + 5 crossing points, 10 edges split into 20 segments: F = 2 - 10 + 20
    assert face_count(entry("k5_e")) == 12


def test_non_reciprocal_crossing_rejected(k4_crossed):
    cr = list(k4_crossed.crossings)
    cr[4] = ()
    bad = Embedding(k4_crossed.graph, tuple(cr), k4_crossed.rotations, k4_crossed.outer)
    report = validate(bad)
    assert not report.ok


def test_adjacent_edges_may_not_cross(triangle):
    cr = ((Crossing(1, LR),), (Crossing(0, RL),), ())
    bad = Embedding(triangle.graph, cr, triangle.rotations, triangle.outer)
    assert not validate(bad).ok


def test_rotation_must_list_incident_edges(triangle):
    rot = list(triangle.rotations)
    rot[0] = (0,)
    bad = Embedding(triangle.graph, triangle.crossings, tuple(rot), triangle.outer)
    assert not validate(bad).ok


def test_wrong_rotation_breaks_euler(k4_planar):
    rot = list(k4_planar.rotations)
    rot[3] = tuple(reversed(rot[3]))
    bad = Embedding(k4_planar.graph, k4_planar.crossings, tuple(rot), k4_planar.outer)
    assert not validate(bad).ok


def test_double_crossing_rejected(k4_crossed):
    cr = list(k4_crossed.crossings)
    cr[4] = cr[4] + cr[4]
    bad = Embedding(k4_crossed.graph, tuple(cr), k4_crossed.rotations, k4_crossed.outer)
    assert not validate(bad).ok


def test_mirror_is_involution_on_catalog():
    for emb in k5_embeddings() + k7_embeddings() + [entry("graph_m")]:
        assert mirror(mirror(emb)) == emb
        assert validate(mirror(emb)).ok


def test_relabel_keeps_validity():
    emb = entry("k5_c")
    out = relabel(emb, [4, 2, 0, 3, 1])
    assert validate(out).ok
    assert out.crossing_count() == emb.crossing_count()


def test_outer_dart_selects_a_face(k4_crossed):
    pl = Planarization(k4_crossed)
    assert pl.outer_face == pl.face_of[k4_crossed.outer]
    other = Embedding(k4_crossed.graph, k4_crossed.crossings, k4_crossed.rotations, Dart(0, 0, True))
    assert Planarization(other).outer_face == pl.face_of[Dart(0, 0, True)]


def test_graph_helpers():
    g = Graph.from_edges(4, [(1, 0), (1, 2), (2, 3)])
    assert g.edges[0] == (0, 1)
    assert g.adjacent(0, 1)
    assert not g.adjacent(0, 2)
    assert g.incident(1) == [0, 1]


@pytest.mark.parametrize("name", ["k5_a", "k5_b", "k5_c", "k5_d", "k5_e"])
def test_catalog_euler(name):
    emb = entry(name)
    v, e, f = Planarization(emb).counts()
    assert v - e + f == 2
