from __future__ import annotations

import xml.etree.ElementTree as ET

import pytest

from fancross.catalog import entry, names
from fancross.render import layout, render_svg

NS = "{http://www.w3.org/2000/svg}"


def _count(svg: str, tag: str, cls: str) -> int:
    root = ET.fromstring(svg)
    return sum(1 for el in root.iter(NS + tag) if el.get("class") == cls)


def test_triangle(triangle):
    svg = render_svg(triangle)
    assert _count(svg, "circle", "vertex") == 3
    assert _count(svg, "line", "segment") == 3
    assert _count(svg, "rect", "crossing") == 0


def test_single_crossing(k4_crossed):
    svg = render_svg(k4_crossed)
    assert _count(svg, "rect", "crossing") == 1
    # each diagonal is split in two at the crossing
    assert _count(svg, "line", "segment") == 4 + 2 * 2


@pytest.mark.parametrize("name", [n for n in names() if n != "graph_m"])
def test_crossing_marks_match_count(name):
    emb = entry(name)
    svg = render_svg(emb)
    assert _count(svg, "rect", "crossing") == emb.crossing_count()
    assert _count(svg, "circle", "vertex") == emb.n


def test_deterministic():
    emb = entry("k5_e")
    assert render_svg(emb, seed=3) == render_svg(emb, seed=3)


def test_labels_are_escaped(triangle):
    svg = render_svg(triangle, labels={0: "a<b"})
    assert "a&lt;b" in svg


def test_layout_points_are_distinct():
    emb = entry("k7_b")
    pos = layout(emb)
    assert len({(round(x, 6), round(y, 6)) for x, y in pos.values()}) == len(pos)
