"""Edge surgery on embeddings: delete, insert into a face, reroute.

Every operation returns a new, validated embedding or raises
:class:`SurgeryError`; inputs are never modified. A reroute is described by
the sequence of planarization darts the new curve crosses (each crossed from
its right face into its left face) plus the rotation slots at both ends.
"""

from __future__ import annotations

import heapq
import itertools
from dataclasses import dataclass
from typing import Mapping, NamedTuple, Sequence, Union

from fancross.embedding import (
    LR,
    RL,
    Crossing,
    Dart,
    Embedding,
    Graph,
    Planarization,
    ValidationReport,
    flip,
    validate,
)


class SurgeryError(ValueError):
    def __init__(self, message: str, report: ValidationReport | None = None) -> None:
        super().__init__(message if report is None else f"{message}: {report}")
        self.report = report


class RouteError(SurgeryError):
    pass


# ---------------------------------------------------------------------------
# Route directives
# ---------------------------------------------------------------------------


class Vertex(NamedTuple):
    """Anchor at a vertex (an endpoint of the guide)."""

    v: int


class CrossPoint(NamedTuple):
    """Anchor at the point where the guide is crossed by ``edge``."""

    edge: int


Anchor = Union[Vertex, CrossPoint]


@dataclass(frozen=True)
class Follow:
    """Run alongside ``guide`` from ``start`` to ``end`` on ``side`` ("left"/"right").

    The side is taken relative to the direction of travel.
    """

    guide: int
    start: Anchor
    end: Anchor
    side: str = "left"


@dataclass(frozen=True)
class Pierce:
    """Cross ``guide`` at the current position."""

    guide: int


RouteDirective = Union[Follow, Pierce]


# ---------------------------------------------------------------------------
# Applying a route
# ---------------------------------------------------------------------------


def apply_route(
    emb: Embedding,
    edge: int,
    start: int,
    crossed: Sequence[Dart],
    start_after: int,
    end_after: int,
    endpoints: tuple[int, int] | None = None,
) -> Embedding:
    """Redraw ``edge`` along a walk from vertex ``start``.

    ``crossed`` are darts of ``emb``'s planarization in walk order; darts of
    ``edge`` itself are ignored (its old course disappears). The edge-end is
    put immediately counterclockwise after edge ``start_after`` at the start
    vertex and after ``end_after`` at the other end. With ``edge == emb.m``
    a new edge with the given ``endpoints`` is created.
    """
    new_edge = edge == emb.m
    if new_edge:
        if endpoints is None:
            raise SurgeryError("a new edge needs endpoints")
        a, b = sorted(endpoints)
        edges = emb.edges + ((a, b),)
    else:
        edges = emb.edges
        a, b = edges[edge]
    if start not in (a, b):
        raise RouteError(f"route starts at {start}, not at an endpoint of edge {edge}")
    end = b if start == a else a
    forward = start == a

    inserts: dict[int, list[tuple[int, str]]] = {}
    own: list[Crossing] = []
    for d in crossed:
        if d.edge == edge:
            continue
        h = d.edge
        # crossing d from its right face to its left face
        walk_sign = RL if not d.rev else LR
        host_sign = walk_sign if forward else flip(walk_sign)
        if h in inserts:
            raise RouteError(f"route crosses edge {h} twice")
        inserts[h] = [(d.seg, host_sign)]
        own.append(Crossing(h, flip(host_sign)))
    if not forward:
        own.reverse()

    token = Crossing(-1, LR)
    crossings: list[tuple[Crossing, ...]] = []
    for h, lst in enumerate(emb.crossings):
        items = list(lst)
        if h in inserts:
            (pos, sg), = inserts[h]
            items.insert(pos, Crossing(-2, sg))
        items = [c for c in items if c.other != edge]
        items = [Crossing(edge, c.sign) if c.other == -2 else c for c in items]
        crossings.append(tuple(items))
    if new_edge:
        crossings.append(tuple(own))
    else:
        crossings[edge] = tuple(own)
    del token

    rotations = [list(r) for r in emb.rotations]
    for vertex, after in ((start, start_after), (end, end_after)):
        rot = rotations[vertex]
        marker = -7
        if not rot:
            rot.append(marker)
        else:
            if after not in rot:
                raise RouteError(f"edge {after} is not at vertex {vertex}")
            rot.insert(rot.index(after) + 1, marker)
        rot[:] = [e for e in rot if e != edge]
        rot[rot.index(marker)] = edge
        # keep the list anchored where it was so untouched rotations compare equal
        first = emb.rotations[vertex][0] if emb.rotations[vertex] else edge
        if first in rot:
            i = rot.index(first)
            rot[:] = rot[i:] + rot[:i]
    graph = Graph(emb.n, edges)
    out = Embedding(graph, tuple(crossings), tuple(tuple(r) for r in rotations), emb.outer)
    out = _carry_outer(emb, out, {edge})
    report = validate(out)
    if not report.ok:
        raise SurgeryError(f"rerouting edge {edge} yields an invalid embedding", report)
    return out


def _carry_outer(
    old: Embedding,
    new: Embedding,
    changed: set[int],
    edge_map: Mapping[int, int] | None = None,
) -> Embedding:
    """Pick an outer dart in ``new`` on (part of) the old outer face."""
    if old.outer is None or not new.edges:
        return Embedding(new.graph, new.crossings, new.rotations, Dart(0, 0, False) if new.edges else None)
    pl = Planarization(old)
    face = pl.faces[pl.face_of[old.outer]]
    start = face.index(old.outer)
    for d in face[start:] + face[:start]:
        nd = _translate_dart(old, new, d, changed, edge_map)
        if nd is not None:
            return Embedding(new.graph, new.crossings, new.rotations, nd)
    return Embedding(new.graph, new.crossings, new.rotations, Dart(0, 0, False))


def _translate_dart(old, new, d: Dart, changed, edge_map) -> Dart | None:
    h = d.edge
    if h in changed:
        return None
    nh = edge_map.get(h) if edge_map is not None else h
    if nh is None or nh >= new.m:
        return None
    old_list = old.crossings[h]
    new_list = [c.other for c in new.crossings[nh]]
    idx = d.seg + 1 if d.rev else d.seg
    if idx == 0:
        nidx = 0
    elif idx == len(old_list) + 1:
        nidx = len(new_list) + 1
    else:
        partner = old_list[idx - 1].other
        if partner in changed:
            return None
        np_ = edge_map.get(partner) if edge_map is not None else partner
        if np_ is None or np_ not in new_list:
            return None
        nidx = new_list.index(np_) + 1
    if d.rev:
        return Dart(nh, nidx - 1, True)
    return Dart(nh, nidx, False)


# ---------------------------------------------------------------------------
# Delete / insert
# ---------------------------------------------------------------------------


def delete_edge(emb: Embedding, edge: int, check: bool = True) -> Embedding:
    """Remove ``edge``; higher edge ids shift down by one."""
    if not 0 <= edge < emb.m:
        raise SurgeryError(f"unknown edge {edge}")
    emap = {e: (e if e < edge else e - 1) for e in range(emb.m) if e != edge}
    edges = tuple(e for i, e in enumerate(emb.edges) if i != edge)
    crossings = tuple(
        tuple(Crossing(emap[c.other], c.sign) for c in lst if c.other != edge)
        for i, lst in enumerate(emb.crossings)
        if i != edge
    )
    rotations = tuple(tuple(emap[e] for e in r if e != edge) for r in emb.rotations)
    out = Embedding(Graph(emb.n, edges), crossings, rotations, None)
    out = _carry_outer(emb, out, {edge}, emap)
    if check:
        report = validate(out)
        if not report.ok:
            raise SurgeryError(f"deleting edge {edge} yields an invalid embedding", report)
    return out


def face_corners(pl: Planarization, face: int, v: int) -> list[int]:
    """Edges ``x`` at ``v`` whose counterclockwise-following sector lies in ``face``."""
    return [d.edge for d in pl.rot.get(v, ()) if pl.face_of[d] == face]


def insert_edge_in_face(
    emb: Embedding,
    u: int,
    v: int,
    face: int,
    slots: tuple[int | None, int | None] = (None, None),
) -> Embedding:
    """Add an uncrossed edge ``{u, v}`` through ``face`` of the planarization.

    ``slots`` name, per endpoint, the edge after which (counterclockwise) the
    new edge-end goes; by default the first corner of the face is used.
    """
    if emb.edge_id(u, v) is not None:
        raise SurgeryError(f"edge {{{u},{v}}} already exists")
    if u == v:
        raise SurgeryError("loops are not allowed")
    pl = Planarization(emb)
    if not 0 <= face < len(pl.faces):
        raise SurgeryError(f"unknown face {face}")
    ends = []
    for x, slot in zip((u, v), slots):
        corners = face_corners(pl, face, x)
        if not corners:
            raise SurgeryError(f"vertex {x} is not on face {face}")
        if slot is None:
            slot = corners[0]
        elif slot not in corners:
            raise SurgeryError(f"slot after edge {slot} at {x} is not in face {face}")
        ends.append(slot)
    return apply_route(emb, emb.m, u, [], ends[0], ends[1], endpoints=(u, v))


def common_faces(pl: Planarization, u: int, v: int) -> list[int]:
    fu = {pl.face_of[d] for d in pl.rot.get(u, ())}
    fv = {pl.face_of[d] for d in pl.rot.get(v, ())}
    return sorted(fu & fv)


# ---------------------------------------------------------------------------
# Directive walker
# ---------------------------------------------------------------------------


class _Walker:
    def __init__(self, pl: Planarization, edge: int) -> None:
        self.pl = pl
        self.edge = edge
        self.node: int | None = None
        self.sector = 0
        self.crossed: list[Dart] = []
        self.start: int | None = None
        self.start_after: int | None = None

    def _rot(self):
        return self.pl.rot[self.node]

    def _cost(self, d: Dart) -> int:
        return 0 if d.edge == self.edge else 1

    def rotate_to(self, target: int) -> None:
        rot = self._rot()
        k = len(rot)
        i = self.sector % k
        target %= k
        if i == target:
            return
        if self.node < self.pl.emb.n:
            raise RouteError(f"cannot turn around vertex {self.node}")
        ccw = [rot[(i + s) % k] for s in range(1, (target - i) % k + 1)]
        cw = [rot[(i - s + 1) % k].twin for s in range(1, (i - target) % k + 1)]
        # the geometrically shorter turn wins; equal turns are decided by cost
        kc = (len(ccw), sum(self._cost(d) for d in ccw))
        kw = (len(cw), sum(self._cost(d) for d in cw))
        if kc == kw and kc[1] > 0:
            raise RouteError(f"ambiguous turn at node {self.node}; add a Pierce")
        self.crossed.extend(ccw if kc <= kw else cw)
        self.sector = target

    def pierce(self, guide: int) -> None:
        rot = self._rot()
        k = len(rot)
        i = self.sector % k
        if rot[(i + 1) % k].edge == guide:
            self.crossed.append(rot[(i + 1) % k])
            self.sector = (i + 1) % k
        elif rot[i].edge == guide:
            self.crossed.append(rot[i].twin)
            self.sector = (i - 1) % k
        else:
            raise RouteError(f"edge {guide} does not bound the current sector")

    def _anchor_pos(self, guide: int, anchor: Anchor) -> int:
        emb = self.pl.emb
        tail, head = emb.edges[guide]
        if isinstance(anchor, Vertex):
            if anchor.v == tail:
                return 0
            if anchor.v == head:
                return len(emb.crossings[guide]) + 1
            raise RouteError(f"vertex {anchor.v} is not an endpoint of edge {guide}")
        return emb.position(guide, anchor.edge) + 1

    def follow(self, step: Follow) -> None:
        pl = self.pl
        p0 = self._anchor_pos(step.guide, step.start)
        p1 = self._anchor_pos(step.guide, step.end)
        if p0 == p1:
            raise RouteError("empty follow span")
        here = pl.point(step.guide, p0)
        forward = p1 > p0
        d = Dart(step.guide, p0, False) if forward else Dart(step.guide, p0 - 1, True)
        left = step.side == "left"
        want = pl.index[d] if left else pl.index[d] - 1
        if self.node is None:
            self.node = here
            self.start = here
            self.sector = want % len(pl.rot[here])
        else:
            if self.node != here:
                raise RouteError(f"follow starts at node {here}, walker is at {self.node}")
            self.rotate_to(want)
        pos = p0
        while True:
            y = pl.target(d)
            pos = pos + 1 if forward else pos - 1
            self.node = y
            ti = pl.index[d.twin]
            self.sector = (ti - 1) if left else ti
            self.sector %= len(pl.rot[y])
            if pos == p1:
                return
            d = Dart(step.guide, pos, False) if forward else Dart(step.guide, pos - 1, True)
            self.rotate_to(pl.index[d] if left else pl.index[d] - 1)


def reroute_along(emb: Embedding, edge: int, route: Sequence[RouteDirective]) -> Embedding:
    """Redraw ``edge`` along a chain of Follow/Pierce directives."""
    if not route or not isinstance(route[0], Follow):
        raise RouteError("a route starts with a Follow directive")
    pl = Planarization(emb)
    w = _Walker(pl, edge)
    first = route[0]
    if not isinstance(first.start, Vertex) or first.start.v not in emb.edges[edge]:
        raise RouteError("route must start at an endpoint of the rerouted edge")
    for step in route:
        if isinstance(step, Follow):
            w.follow(step)
        else:
            if w.node is None:
                raise RouteError("pierce before any follow")
            w.pierce(step.guide)
    start = first.start.v
    end = emb.edges[edge][1] if start == emb.edges[edge][0] else emb.edges[edge][0]
    if w.node != end:
        raise RouteError(f"route ends at node {w.node}, not at vertex {end}")
    rot_s = pl.rot[start]
    # recover the start sector from the first follow
    d0 = pl.leaving(first.guide, start)
    si = pl.index[d0] if first.side == "left" else pl.index[d0] - 1
    start_after = rot_s[si % len(rot_s)].edge
    end_after = pl.rot[end][w.sector % len(pl.rot[end])].edge
    return apply_route(emb, edge, start, w.crossed, start_after, end_after)


# ---------------------------------------------------------------------------
# Corridor search
# ---------------------------------------------------------------------------


Allowed = Mapping[int, Union[frozenset, set, None]]


def corridor_route(
    emb: Embedding,
    edge: int,
    allowed: Allowed,
    start: int | None = None,
    endpoints: tuple[int, int] | None = None,
) -> tuple[int, list[Dart], int, int]:
    """Fewest-crossing walk for ``edge`` that only crosses ``allowed`` edges.

    ``allowed`` maps an edge id to the set of sides ("L"/"R", relative to the
    crossed edge's orientation) from which the walk may enter it, or to
    ``None`` for either side. Each edge is crossed at most once; edges that
    share an endpoint with ``edge`` are never crossed. The old course of
    ``edge`` (if it exists) is transparent.

    Returns ``(start, crossed darts, start_after, end_after)``.
    """
    if endpoints is None:
        endpoints = emb.edges[edge]
    a, b = endpoints
    u = a if start is None else start
    v = b if u == a else a
    pl = Planarization(emb)
    ends = set(endpoints)
    ok = {}
    for h, sides in allowed.items():
        if h == edge or h >= emb.m or ends & set(emb.edges[h]):
            continue
        ok[h] = None if sides is None else frozenset(sides)
    goal_faces: dict[int, int] = {}
    for d in pl.rot.get(v, ()):
        goal_faces.setdefault(pl.face_of[d], d.edge)

    counter = itertools.count()
    heap = []
    best: dict[tuple[int, frozenset], int] = {}
    for d in pl.rot.get(u, ()):
        f = pl.face_of[d]
        key = (f, frozenset())
        if key not in best:
            best[key] = 0
            heapq.heappush(heap, (0, next(counter), f, frozenset(), (), d.edge))
    while heap:
        cost, _, f, used, path, s_after = heapq.heappop(heap)
        if best.get((f, used), 1 << 30) < cost:
            continue
        if f in goal_faces:
            return u, list(path), s_after, goal_faces[f]
        for d in pl.faces[f]:
            x = d.twin
            h = x.edge
            g = pl.face_of[x]
            if h == edge:
                step, nused = 0, used
            else:
                if h not in ok or h in used:
                    continue
                sides = ok[h]
                side_from = "L" if x.rev else "R"
                if sides is not None and side_from not in sides:
                    continue
                step, nused = 1, used | {h}
            key = (g, nused)
            nc = cost + step
            if best.get(key, 1 << 30) <= nc:
                continue
            best[key] = nc
            heapq.heappush(heap, (nc, next(counter), g, nused, path + (x,), s_after))
    raise RouteError(f"no corridor route for edge {edge} within the allowed crossings")


def reroute_in_corridor(emb: Embedding, edge: int, allowed: Allowed, start: int | None = None) -> Embedding:
    u, path, s_after, e_after = corridor_route(emb, edge, allowed, start)
    return apply_route(emb, edge, u, path, s_after, e_after)


def insert_in_corridor(emb: Embedding, u: int, v: int, allowed: Allowed) -> Embedding:
    """Add a new edge ``{u, v}`` crossing only ``allowed`` edges."""
    if emb.edge_id(u, v) is not None:
        raise SurgeryError(f"edge {{{u},{v}}} already exists")
    s, path, s_after, e_after = corridor_route(emb, emb.m, allowed, start=u, endpoints=(u, v))
    return apply_route(emb, emb.m, s, path, s_after, e_after, endpoints=(u, v))


def walks(
    pl: Planarization,
    x: int,
    y: int | None,
    budget: int,
    transparent: int | None = None,
):
    """Every walk from a corner of ``x`` to a corner of ``y`` with at most ``budget`` crossings.

    Yields ``(start_after, crossed darts, end)``; ``end`` is the edge after
    which the walk arrives at ``y``, or the final face id when ``y`` is None.
    No edge is crossed twice and edges sharing an endpoint with the walk are
    never crossed. Darts of the ``transparent`` edge are free to cross.
    """
    emb = pl.emb
    ends = {x} if y is None else {x, y}
    end_corners: dict[int, list[int]] = {}
    if y is not None:
        for d in pl.rot[y]:
            end_corners.setdefault(pl.face_of[d], []).append(d.edge)

    def dfs(face: int, used: frozenset, path: tuple, cost: int, free_seen: frozenset):
        if y is None:
            yield path, face
        else:
            for e_after in end_corners.get(face, ()):
                yield path, e_after
        for d in pl.faces[face]:
            t = d.twin
            h = t.edge
            nxt = pl.face_of[t]
            if h == transparent:
                if nxt in free_seen:
                    continue
                yield from dfs(nxt, used, path + (t,), cost, free_seen | {nxt})
                continue
            if cost >= budget or h in used or ends & set(emb.edges[h]):
                continue
            yield from dfs(nxt, used | {h}, path + (t,), cost + 1, frozenset((nxt,)))

    for d in pl.rot[x]:
        f0 = pl.face_of[d]
        for path, end in dfs(f0, frozenset(), (), 0, frozenset((f0,))):
            yield d.edge, path, end


def induced(emb: Embedding, vertices: Sequence[int]) -> Embedding:
    """Sub-embedding induced by ``vertices`` (ascending); ``vertices[i]`` becomes ``i``."""
    if list(vertices) != sorted(vertices):
        raise SurgeryError("list the vertices in ascending order")
    keep = {v: i for i, v in enumerate(vertices)}
    kept = [e for e, (a, b) in enumerate(emb.edges) if a in keep and b in keep]
    emap = {e: i for i, e in enumerate(kept)}
    edges = tuple((keep[emb.edges[e][0]], keep[emb.edges[e][1]]) for e in kept)
    crossings = tuple(
        tuple(Crossing(emap[c.other], c.sign) for c in emb.crossings[e] if c.other in emap)
        for e in kept
    )
    rotations = tuple(tuple(emap[e] for e in emb.rotations[v] if e in emap) for v in vertices)
    res = Embedding(Graph(len(vertices), edges), crossings, rotations, None)
    removed = set(range(emb.m)) - set(kept)
    res = _carry_outer(emb, res, removed, emap)
    report = validate(res)
    if not report.ok:
        raise SurgeryError("induced sub-embedding is invalid", report)
    return res
