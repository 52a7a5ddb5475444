from __future__ import annotations

import pytest

from fancross.drawing import from_drawing
from fancross.embedding import Graph


def complete(n: int) -> Graph:
    return Graph.from_edges(n, [(i, j) for i in range(n) for j in range(i + 1, n)])


WHEEL4 = Graph.from_edges(5, [(0, 1), (1, 2), (2, 3), (0, 3), (0, 4), (1, 4), (2, 4), (3, 4)])
PRISM3 = Graph.from_edges(6, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5), (0, 3), (1, 4), (2, 5)])
SWEEP = [("K4", complete(4)), ("K5", complete(5)), ("W4", WHEEL4), ("P3", PRISM3)]


@pytest.fixture
def triangle():
    return from_drawing([(0, 0), (4, 0), (2, 3)], [(0, 1), (1, 2), (0, 2)])


@pytest.fixture
def k4_crossed():
    """K4 on a square with both diagonals crossing."""
    return from_drawing([(0, 0), (4, 0), (4, 4), (0, 4)], [(0, 1), (1, 2), (2, 3), (0, 3), (0, 2), (1, 3)])


@pytest.fixture
def k4_planar():
    return from_drawing([(0, 0), (4, 0), (2, 4), (2, 1)], [(0, 1), (1, 2), (0, 2), (0, 3), (1, 3), (2, 3)])


# Triangle (a, b, c) = (0, 1, 2) with two crossers from u = 3 running in
# opposite directions; u is tied to a by an uncrossed edge.
BIDIRECTIONAL = (
    [(0, 0), (10, 0), (0, 10), (-5, 5), (2.5, 1), (7, 2)],
    [(0, 1), (1, 2), (0, 2), (3, 4), (3, 5), (0, 3)],
    {3: [(3, 4), (12, 2), (12, -3), (4, -3)], 4: [(2, 2), (8, -1.5), (11, -0.5), (10, 1.5)]},
)


@pytest.fixture
def bidirectional():
    return from_drawing(*BIDIRECTIONAL)


@pytest.fixture
def bidirectional_needles():
    """The bidirectional triangle plus needles from u beyond, between and
    before the two crossers along {a, c}."""
    points, edges, bends = BIDIRECTIONAL
    return from_drawing(points + [(1, 7), (1, 3.5), (1, 1)], edges + [(3, 6), (3, 7), (3, 8)], bends)


# Configuration II: base {u, v} = {0, 1}, apex t = 2, straight edge {t, y}
# and a left curve {t, x} that wraps around u.
CONF_POINTS = [(0, 0), (10, 0), (5, 6), (2, 1.5), (5, -5)]
CONF_EDGES = [(0, 1), (2, 3), (2, 4), (0, 2), (1, 2)]
CONF_BENDS = {1: [(-3, 3), (-3, -3), (2, -2)]}


@pytest.fixture
def conf_left():
    return from_drawing(CONF_POINTS, CONF_EDGES, CONF_BENDS)


@pytest.fixture
def conf_semi_straight():
    """The straight edge is also crossed by {v, w} below the base."""
    return from_drawing(CONF_POINTS + [(3, -3)], CONF_EDGES + [(1, 5)], CONF_BENDS)


@pytest.fixture
def conf_semi_curve():
    """The curve is also crossed by {u, w} inside the triangle (t, u, v)."""
    return from_drawing(CONF_POINTS + [(4, 1)], CONF_EDGES + [(0, 5)], CONF_BENDS)


@pytest.fixture
def conf_three_sided():
    """A left curve, a straight edge and a right curve around v."""
    bends = dict(CONF_BENDS)
    bends[5] = [(13, 3), (13, -3), (8, -2)]
    return from_drawing(CONF_POINTS + [(8, 1.5)], CONF_EDGES + [(2, 5)], bends)


@pytest.fixture
def conf_missing_tu():
    return from_drawing(CONF_POINTS, [(0, 1), (2, 3), (2, 4), (1, 2)], CONF_BENDS)


# Acceptance results, filled in by test_acceptance.py and printed after the run.
ACCEPTANCE: dict[int, tuple[bool, str]] = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE):
        ok, detail = ACCEPTANCE[k]
        terminalreporter.write_line(f"criterion {k}: {'PASS' if ok else 'FAIL'}  {detail}")
