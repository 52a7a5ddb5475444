"""Construction of graph M: a fan-crossing graph whose embedding forces
configuration II.

A skeleton is drawn first with every fat edge as a plain uncrossed edge;
each fat edge is then replaced by a copy of the K7 gadget.
"""

from __future__ import annotations

from pathlib import Path

from fancross.catalog import fat_edge
from fancross.document import save
from fancross.drawing import from_drawing
from fancross.embedding import Crossing, Embedding, Graph, Planarization, relabel, validate

NAMES = ["t", "v", "y", "b", "a", "t'", "v'", "y'", "b'", "a'", "s", "u", "w", "x", "z"]
# Inner frame in clockwise order t, v, y, b, a; the outer frame is a scaled copy.
INNER = {"t": (0, 10), "v": (9, 4), "y": (6, -8), "b": (-6, -8), "a": (-9, 4)}
POS = dict(INNER)
POS.update({k + "'": (1.6 * x, 1.6 * y - 1) for k, (x, y) in INNER.items()})
POS.update({"s": (0, 6.5), "u": (-2, 6), "x": (-3, 2), "w": (0, 0), "z": (2, 5)})

FRAME = ["t", "v", "y", "b", "a"]
FAT = (
    [(FRAME[i], FRAME[(i + 1) % 5]) for i in range(5)]
    + [(FRAME[i] + "'", FRAME[(i + 1) % 5] + "'") for i in range(5)]
    + [(k, k + "'") for k in FRAME]
    + [("t", "u"), ("u", "x"), ("x", "w"), ("w", "z"), ("z", "t")]
    + [("t", "s"), ("s", "u"), ("s", "z"), ("x", "z")]
)
# Ordinary edges with their bends, listed from the first named endpoint.
ORDINARY = {
    ("u", "a"): [],
    ("u", "b"): [(-3.70, 4.94), (-7, -1)],
    ("u", "v"): [(-3.34, 4.51), (-6, 0), (-2, -4), (5.8, -3), (6.71, 0.72)],
    ("u", "w"): [(-2.88, 4.20), (-4.5, 1), (-1, -2)],
    ("t", "x"): [(-3.04, 6.6), (-3.20, 5.90), (-3.09, 5.49), (-2.92, 5.23), (-2.67, 5.01), (-2.41, 4.87)],
    ("t", "y"): [(3.5, 5)],
    ("v", "z"): [(6.09, 3.27)],
    ("v", "w"): [(5, 0)],
    ("b", "v"): [(-3, -6), (6.2, -6), (7.31, 0.37)],
}


def skeleton() -> Embedding:
    ids = {name: i for i, name in enumerate(NAMES)}
    points = [POS[name] for name in NAMES]
    edges, bends = [], {}
    for p, q in FAT:
        edges.append((ids[p], ids[q]))
    for (p, q), pts in ORDINARY.items():
        if pts:
            bends[len(edges)] = pts
        edges.append((ids[p], ids[q]))
    return from_drawing(points, edges, bends)


def glue(host: Embedding, edge: int, gadget: Embedding, terminals: tuple[int, int]) -> tuple[Embedding, list[int]]:
    """Replace the uncrossed ``edge`` of ``host`` by ``gadget``.

    ``terminals`` are the gadget vertices identified with the tail and head
    of ``edge``; both must lie once on the gadget's outer face. Gadget edges
    are appended after the host's remaining edges.
    """
    assert not host.crossings[edge]
    p, q = host.edges[edge]
    gp, gq = terminals
    others = [v for v in range(gadget.n) if v not in terminals]
    final = {gp: p, gq: q}
    for i, v in enumerate(others):
        final[v] = host.n + i
    # Order-preserving relabel so gadget edge directions match the final ids.
    ranks = sorted(range(gadget.n), key=lambda v: final[v])
    perm = [0] * gadget.n
    for r, v in enumerate(ranks):
        perm[v] = r
    g = relabel(gadget, perm)
    to_final = {perm[v]: final[v] for v in range(gadget.n)}
    gpl = Planarization(g)
    outer = gpl.outer_face

    emap = {e: (e if e < edge else e - 1) for e in range(host.m) if e != edge}
    base = host.m - 1
    edges = [host.edges[e] for e in range(host.m) if e != edge]
    edges += [(to_final[a], to_final[b]) for a, b in g.edges]
    crossings = [tuple(Crossing(emap[c.other], c.sign) for c in host.crossings[e]) for e in range(host.m) if e != edge]
    crossings += [tuple(Crossing(base + c.other, c.sign) for c in lst) for lst in g.crossings]

    def opened(gv: int) -> list[int]:
        darts = gpl.rot[gv]
        idx = [i for i, d in enumerate(darts) if gpl.face_of[d] == outer]
        assert len(idx) == 1, "terminal must appear once on the outer face"
        i = idx[0]
        seq = darts[i + 1 :] + darts[: i + 1]
        return [base + d.edge for d in seq]

    rotations = []
    for v in range(host.n):
        rot = []
        for e in host.rotations[v]:
            if e == edge:
                rot += opened(perm[gp] if v == p else perm[gq])
            else:
                rot.append(emap[e])
        rotations.append(tuple(rot))
    for v in others:
        rotations.append(tuple(base + e for e in g.rotations[perm[v]]))
    out = Embedding(Graph(host.n + len(others), tuple(edges)), tuple(crossings), tuple(rotations), None)
    return out, [p, q] + [host.n + i for i in range(len(others))]


def gadget_with_terminals() -> tuple[Embedding, tuple[int, int]]:
    """The fat-edge K7 with an outer face holding two real vertices once each."""
    k7 = fat_edge()
    pl = Planarization(k7)
    for f, face in enumerate(pl.faces):
        real = [pl.origin(d) for d in face if pl.origin(d) < k7.n]
        if len(real) == 2 and len(set(real)) == 2:
            dart = face[0]
            emb = Embedding(k7.graph, k7.crossings, k7.rotations, dart)
            return emb, (real[0], real[1])
    raise RuntimeError("no suitable face")


def build() -> tuple[Embedding, dict]:
    emb = skeleton()
    gadget, terms = gadget_with_terminals()
    ids = {name: i for i, name in enumerate(NAMES)}
    gadgets = []
    for p, q in FAT:
        emb, verts = glue(emb, emb.edge_id(ids[p], ids[q]), gadget, terms)
        gadgets.append(sorted(verts))
    # Outer face: the one holding the whole outer frame.
    pl = Planarization(emb)
    frame = {ids[k + "'"] for k in FRAME}
    face = next(f for f in pl.faces if frame <= {pl.origin(d) for d in f})
    outer = next(d for d in face if pl.origin(d) < emb.n)
    emb = Embedding(emb.graph, emb.crossings, emb.rotations, outer)
    report = validate(emb)
    assert report.ok, str(report)
    meta = {
        "name": "graph_m",
        "note": "fat edges expanded to K7 gadgets; configuration II on {u,v} with apex t",
        "labels": {name: ids[name] for name in NAMES},
        "gadgets": gadgets,
    }
    return emb, meta


def build_m(data: Path) -> None:
    emb, meta = build()
    save(data / "graph_m.json", emb, meta)
    print("graph_m", emb.n, emb.m, emb.crossing_count())
