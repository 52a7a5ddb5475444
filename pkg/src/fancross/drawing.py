"""Build embeddings from explicit polyline drawings.

Coordinates are only an authoring aid: they are turned into crossing lists,
signs and rotations, and then discarded.
"""

from __future__ import annotations

import math
from typing import Mapping, Sequence

from fancross.embedding import LR, RL, Crossing, Dart, Embedding, Graph

Point = tuple[float, float]


def _cross(o: Point, a: Point, b: Point) -> float:
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def _seg_intersection(p1: Point, p2: Point, q1: Point, q2: Point) -> tuple[float, float] | None:
    """Parameters (s, t) of a proper crossing of p1p2 and q1q2, if any."""
    dx1, dy1 = p2[0] - p1[0], p2[1] - p1[1]
    dx2, dy2 = q2[0] - q1[0], q2[1] - q1[1]
    den = dx1 * dy2 - dy1 * dx2
    if abs(den) < 1e-12:
        return None
    s = ((q1[0] - p1[0]) * dy2 - (q1[1] - p1[1]) * dx2) / den
    t = ((q1[0] - p1[0]) * dy1 - (q1[1] - p1[1]) * dx1) / den
    eps = 1e-9
    if eps < s < 1 - eps and eps < t < 1 - eps:
        return s, t
    return None


def from_drawing(
    points: Sequence[Point],
    edges: Sequence[tuple[int, int]],
    bends: Mapping[int, Sequence[Point]] | None = None,
) -> Embedding:
    """Embedding of a polyline drawing.

    ``bends[i]`` lists interior points of edge ``i`` in the order they are
    passed when walking from ``edges[i][0]`` to ``edges[i][1]``.
    """
    bends = bends or {}
    n = len(points)
    graph = Graph.from_edges(n, edges)
    paths: list[list[Point]] = []
    for i, (u, v) in enumerate(edges):
        path = [tuple(points[u])] + [tuple(p) for p in bends.get(i, ())] + [tuple(points[v])]
        if u > v:
            path.reverse()
        paths.append(path)

    # (position along host, other edge, sign, point)
    hits: list[list[tuple[float, int, str, Point]]] = [[] for _ in edges]
    for e in range(len(edges)):
        for f in range(e + 1, len(edges)):
            pe, pf = paths[e], paths[f]
            for i in range(len(pe) - 1):
                for j in range(len(pf) - 1):
                    r = _seg_intersection(pe[i], pe[i + 1], pf[j], pf[j + 1])
                    if r is None:
                        continue
                    s, t = r
                    pt = (pe[i][0] + s * (pe[i + 1][0] - pe[i][0]), pe[i][1] + s * (pe[i + 1][1] - pe[i][1]))
                    # f's direction relative to e's direction
                    ev = (pe[i + 1][0] - pe[i][0], pe[i + 1][1] - pe[i][1])
                    fv = (pf[j + 1][0] - pf[j][0], pf[j + 1][1] - pf[j][1])
                    z = ev[0] * fv[1] - ev[1] * fv[0]
                    # z > 0: f heads to e's left, i.e. passes right -> left
                    sign_on_e = RL if z > 0 else LR
                    hits[e].append((i + s, f, sign_on_e, pt))
                    hits[f].append((j + t, e, RL if sign_on_e == LR else LR, pt))
    crossings = []
    for lst in hits:
        lst.sort(key=lambda h: h[0])
        crossings.append(tuple(Crossing(f, sg) for _, f, sg, _ in lst))

    rotations = []
    for v in range(n):
        inc = []
        for i, (a, b) in enumerate(graph.edges):
            if v not in (a, b):
                continue
            path = paths[i]
            nxt = path[1] if v == a else path[-2]
            ang = math.atan2(nxt[1] - points[v][1], nxt[0] - points[v][0])
            inc.append((ang, i))
        inc.sort()
        rotations.append(tuple(i for _, i in inc))

    emb = Embedding(graph, tuple(crossings), tuple(rotations), Dart(0, 0, False) if edges else None)
    return _with_geometric_outer(emb, points, paths, hits)


def _with_geometric_outer(emb, points, paths, hits) -> Embedding:
    """Pick an outer dart from the leftmost node of the drawing."""
    if not emb.edges:
        return emb
    bend_min = None
    for i, path in enumerate(paths):
        for j in range(1, len(path) - 1):
            if bend_min is None or path[j] < bend_min[0]:
                bend_min = (path[j], i, j)
    v = min(range(emb.n), key=lambda i: (points[i][0], points[i][1]))
    if bend_min is not None and bend_min[0] < tuple(points[v]):
        _, e, j = bend_min
        path = paths[e]
        seg = sum(1 for h in hits[e] if h[0] < j)
        southward = path[j + 1][1] < path[j - 1][1]
        # west of a southward curve is on its right
        d = Dart(e, seg, False)
        outer = d.twin if southward else d
        return Embedding(emb.graph, emb.crossings, emb.rotations, outer)
    # darts leaving the leftmost vertex; the outer face contains direction west
    best = None
    for i, (a, b) in enumerate(emb.edges):
        if v not in (a, b):
            continue
        path = paths[i]
        nxt = path[1] if v == a else path[-2]
        ang = math.atan2(nxt[1] - points[v][1], nxt[0] - points[v][0])
        # counterclockwise distance from this dart's direction to west (pi)
        gap = (math.pi - ang) % (2 * math.pi)
        if best is None or gap < best[0]:
            best = (gap, i, a == v)
    _, e, at_tail = best
    k = len(emb.crossings[e])
    outer = Dart(e, 0, False) if at_tail else Dart(e, k, True)
    return Embedding(emb.graph, emb.crossings, emb.rotations, outer)
