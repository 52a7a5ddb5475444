"""Combinatorial embeddings of simple topological graphs.

An :class:`Embedding` stores, for every edge, the ordered list of edges that
cross it (tail to head, tail being the smaller endpoint) together with the
direction of each crossing, the counterclockwise rotation at every vertex and
a dart naming the outer face. Everything else (faces, sides, regions) is
derived from the :class:`Planarization`, where crossing points become
degree-4 vertices.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, NamedTuple, Sequence

LR = "LR"
RL = "RL"


def flip(sign: str) -> str:
    return RL if sign == LR else LR


class Crossing(NamedTuple):
    """One crossing on a host edge.

    ``sign`` is ``"LR"`` when, walking the host from tail to head, ``other``
    passes from the host's left to its right (and ``"RL"`` otherwise).
    """

    other: int
    sign: str


class Dart(NamedTuple):
    """Directed edge segment: segment ``seg`` of ``edge``, reversed if ``rev``."""

    edge: int
    seg: int
    rev: bool = False

    @property
    def twin(self) -> "Dart":
        return Dart(self.edge, self.seg, not self.rev)


@dataclass(frozen=True)
class Graph:
    n: int
    edges: tuple[tuple[int, int], ...]

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Sequence[int]]) -> "Graph":
        return cls(n, tuple((min(u, v), max(u, v)) for u, v in edges))

    @property
    def m(self) -> int:
        return len(self.edges)

    def edge_index(self) -> dict[frozenset[int], int]:
        return {frozenset(e): i for i, e in enumerate(self.edges)}

    def incident(self, v: int) -> list[int]:
        return [i for i, e in enumerate(self.edges) if v in e]

    def adjacent(self, e: int, f: int) -> bool:
        return bool(set(self.edges[e]) & set(self.edges[f]))


@dataclass(frozen=True)
class Embedding:
    graph: Graph
    crossings: tuple[tuple[Crossing, ...], ...]
    rotations: tuple[tuple[int, ...], ...]
    outer: Dart | None = None

    @classmethod
    def build(
        cls,
        n: int,
        edges: Iterable[Sequence[int]],
        crossings: Iterable[Iterable[Sequence]] | None = None,
        rotations: Iterable[Iterable[int]] | None = None,
        outer: Sequence | None = None,
    ) -> "Embedding":
        graph = Graph.from_edges(n, edges)
        if crossings is None:
            cr = tuple(() for _ in graph.edges)
        else:
            cr = tuple(tuple(Crossing(int(o), str(s)) for o, s in lst) for lst in crossings)
        if rotations is None:
            rot = tuple(tuple(graph.incident(v)) for v in range(n))
        else:
            rot = tuple(tuple(r) for r in rotations)
        if outer is None:
            out = Dart(0, 0, False) if graph.edges else None
        else:
            out = Dart(int(outer[0]), int(outer[1]), bool(outer[2]))
        return cls(graph, cr, rot, out)

    @property
    def n(self) -> int:
        return self.graph.n

    @property
    def m(self) -> int:
        return self.graph.m

    @property
    def edges(self) -> tuple[tuple[int, int], ...]:
        return self.graph.edges

    def crossing_count(self) -> int:
        return sum(len(c) for c in self.crossings) // 2

    def crossers(self, e: int) -> list[int]:
        return [c.other for c in self.crossings[e]]

    def crossing_pairs(self) -> set[frozenset[int]]:
        return {frozenset((e, c.other)) for e, lst in enumerate(self.crossings) for c in lst}

    def sign(self, host: int, other: int) -> str:
        for c in self.crossings[host]:
            if c.other == other:
                return c.sign
        raise KeyError(f"edge {other} does not cross edge {host}")

    def position(self, host: int, other: int) -> int:
        for i, c in enumerate(self.crossings[host]):
            if c.other == other:
                return i
        raise KeyError(f"edge {other} does not cross edge {host}")

    def edge_id(self, u: int, v: int) -> int | None:
        key = (min(u, v), max(u, v))
        for i, e in enumerate(self.edges):
            if e == key:
                return i
        return None

    def planarize(self) -> "Planarization":
        report = validate(self)
        if not report.ok:
            raise InvalidEmbedding(report)
        return Planarization(self)


# ---------------------------------------------------------------------------
# Planarization
# ---------------------------------------------------------------------------


class Planarization:
    """Planar map of an embedding with crossings promoted to vertices.

    Nodes ``0..n-1`` are the graph's vertices, crossing nodes follow in the
    order of their (smaller edge, larger edge) pair. Faces lie to the left of
    their darts; ``face_of[d]`` is the face on the left of ``d``.
    """

    def __init__(self, emb: Embedding) -> None:
        self.emb = emb
        n = emb.n
        self.cross_node: dict[frozenset[int], int] = {}
        pairs = sorted(tuple(sorted(p)) for p in emb.crossing_pairs())
        for i, (e, f) in enumerate(pairs):
            self.cross_node[frozenset((e, f))] = n + i
        self.node_pair = {v: k for k, v in self.cross_node.items()}
        self.num_nodes = n + len(pairs)

        self.rot: dict[int, list[Dart]] = {}
        for v in range(n):
            self.rot[v] = [self.leaving(e, v) for e in emb.rotations[v]]
        for (e, f) in pairs:
            j = emb.position(e, f)
            k = emb.position(f, e)
            eh, et = Dart(e, j + 1, False), Dart(e, j, True)
            fh, ft = Dart(f, k + 1, False), Dart(f, k, True)
            if emb.crossings[e][j].sign == LR:
                order = [eh, ft, et, fh]
            else:
                order = [eh, fh, et, ft]
            self.rot[self.cross_node[frozenset((e, f))]] = order

        self.index: dict[Dart, int] = {}
        for x, darts in self.rot.items():
            for i, d in enumerate(darts):
                self.index[d] = i

        self.faces: list[list[Dart]] = []
        self.face_of: dict[Dart, int] = {}
        for x in range(self.num_nodes):
            for d in self.rot.get(x, ()):
                if d in self.face_of:
                    continue
                fid = len(self.faces)
                walk = []
                cur = d
                while cur not in self.face_of:
                    self.face_of[cur] = fid
                    walk.append(cur)
                    cur = self.next_in_face(cur)
                self.faces.append(walk)
        if not self.faces:
            self.faces.append([])
        self.outer_face = self.face_of.get(emb.outer, 0) if emb.outer is not None else 0

    # -- points and darts -------------------------------------------------
    def point(self, e: int, j: int) -> int:
        """Node at position ``j`` along edge ``e`` (0 = tail, k+1 = head)."""
        lst = self.emb.crossings[e]
        if j == 0:
            return self.emb.edges[e][0]
        if j == len(lst) + 1:
            return self.emb.edges[e][1]
        return self.cross_node[frozenset((e, lst[j - 1].other))]

    def leaving(self, e: int, v: int) -> Dart:
        tail, head = self.emb.edges[e]
        if v == tail:
            return Dart(e, 0, False)
        if v == head:
            return Dart(e, len(self.emb.crossings[e]), True)
        raise ValueError(f"vertex {v} is not an endpoint of edge {e}")

    def origin(self, d: Dart) -> int:
        return self.point(d.edge, d.seg + 1 if d.rev else d.seg)

    def target(self, d: Dart) -> int:
        return self.point(d.edge, d.seg if d.rev else d.seg + 1)

    def next_in_face(self, d: Dart) -> Dart:
        y = self.target(d)
        darts = self.rot[y]
        return darts[self.index[d.twin] - 1]

    def left(self, d: Dart) -> int:
        return self.face_of[d]

    def right(self, d: Dart) -> int:
        return self.face_of[d.twin]

    def sector_face(self, x: int, i: int) -> int:
        """Face of the counterclockwise sector following ``rot[x][i]``."""
        return self.face_of[self.rot[x][i % len(self.rot[x])]]

    def all_darts(self) -> list[Dart]:
        return [d for x in range(self.num_nodes) for d in self.rot.get(x, ())]

    def face_nodes(self, f: int) -> list[int]:
        return [self.origin(d) for d in self.faces[f]]

    def counts(self) -> tuple[int, int, int]:
        """(V', E', F) of the planar map."""
        v = self.num_nodes
        e = sum(len(lst) + 1 for lst in self.emb.crossings)
        return v, e, len(self.faces)

    def is_connected(self) -> bool:
        if self.num_nodes == 0:
            return True
        seen = {0}
        queue = deque([0])
        while queue:
            x = queue.popleft()
            for d in self.rot.get(x, ()):
                y = self.target(d)
                if y not in seen:
                    seen.add(y)
                    queue.append(y)
        return len(seen) == self.num_nodes

    def regions(
        self,
        barrier_edges: Iterable[int] = (),
        barrier_segments: Iterable[tuple[int, int]] = (),
    ) -> dict[int, int]:
        """Label faces by connected region after cutting along a barrier.

        The barrier is every segment of ``barrier_edges`` plus the single
        segments ``(edge, seg)`` in ``barrier_segments``. Faces are adjacent
        when they share a segment outside the barrier.
        """
        barrier_e = set(barrier_edges)
        barrier_s = set(barrier_segments)
        label: dict[int, int] = {}
        for start in range(len(self.faces)):
            if start in label:
                continue
            rid = start
            label[start] = rid
            stack = [start]
            while stack:
                f = stack.pop()
                for d in self.faces[f]:
                    if d.edge in barrier_e or (d.edge, d.seg) in barrier_s:
                        continue
                    g = self.face_of[d.twin]
                    if g not in label:
                        label[g] = rid
                        stack.append(g)
        return label

    def vertex_region(self, v: int, label: dict[int, int]) -> set[int]:
        return {label[self.face_of[d]] for d in self.rot.get(v, ())}


# ---------------------------------------------------------------------------
# Validation
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Violation:
    kind: str
    detail: str


@dataclass
class ValidationReport:
    violations: list[Violation] = field(default_factory=list)
    counts: tuple[int, int, int] | None = None

    @property
    def ok(self) -> bool:
        return not self.violations

    def add(self, kind: str, detail: str) -> None:
        self.violations.append(Violation(kind, detail))

    def kinds(self) -> set[str]:
        return {v.kind for v in self.violations}

    def __str__(self) -> str:
        if self.ok:
            return "valid"
        return "; ".join(f"{v.kind}: {v.detail}" for v in self.violations)


class InvalidEmbedding(ValueError):
    def __init__(self, report: ValidationReport) -> None:
        super().__init__(str(report))
        self.report = report


def validate(emb: Embedding) -> ValidationReport:
    """Check every structural and topological invariant of ``emb``."""
    rep = ValidationReport()
    n, m = emb.n, emb.m
    seen_pairs = set()
    for i, (u, v) in enumerate(emb.edges):
        if not (0 <= u < n and 0 <= v < n):
            rep.add("index", f"edge {i} has endpoint out of range")
        if u == v:
            rep.add("self-loop", f"edge {i} is a loop at {u}")
        if u > v:
            rep.add("orientation", f"edge {i} not stored smaller endpoint first")
        if (u, v) in seen_pairs:
            rep.add("multi-edge", f"edge {i} duplicates {(u, v)}")
        seen_pairs.add((u, v))
    if len(emb.crossings) != m:
        rep.add("index", "crossing table length differs from edge count")
        return rep
    if len(emb.rotations) != n:
        rep.add("index", "rotation table length differs from vertex count")
        return rep
    if not rep.ok:
        return rep

    for e, lst in enumerate(emb.crossings):
        others = [c.other for c in lst]
        for c in lst:
            if not 0 <= c.other < m:
                rep.add("index", f"edge {e} lists unknown edge {c.other}")
            elif c.sign not in (LR, RL):
                rep.add("sign", f"edge {e} lists bad sign {c.sign!r}")
        if len(set(others)) != len(others):
            rep.add("double-crossing", f"edge {e} crosses some edge more than once")
        if e in others:
            rep.add("self-crossing", f"edge {e} crosses itself")
    if not rep.ok:
        return rep
    for e, lst in enumerate(emb.crossings):
        for c in lst:
            f = c.other
            if emb.graph.adjacent(e, f) and e != f:
                if e < f:
                    rep.add("adjacent-crossing", f"adjacent edges {e} and {f} cross")
            back = [d for d in emb.crossings[f] if d.other == e]
            if len(back) != 1:
                rep.add("reciprocity", f"edge {e} lists {f} but {f} does not list {e}")
            elif back[0].sign == c.sign:
                rep.add("reciprocity", f"edges {e} and {f} record the same sign {c.sign}")

    for v in range(n):
        rot = emb.rotations[v]
        inc = set(emb.graph.incident(v))
        if len(rot) != len(set(rot)) or set(rot) != inc:
            rep.add("rotation", f"rotation at {v} is not a permutation of its incident edges")
    if not rep.ok:
        return rep

    if emb.outer is not None:
        o = emb.outer
        if not (0 <= o.edge < m and 0 <= o.seg <= len(emb.crossings[o.edge])):
            rep.add("outer", "outer dart does not exist")
    elif m:
        rep.add("outer", "missing outer dart")
    if not _graph_connected(emb.graph):
        rep.add("disconnected", "graph is not connected")
        return rep

    pl = Planarization(emb)
    counts = pl.counts()
    rep.counts = counts
    if not pl.is_connected():
        rep.add("disconnected", "planarization is not connected")
    v_, e_, f_ = counts
    if v_ - e_ + f_ != 2:
        rep.add("euler", f"V'-E'+F = {v_}-{e_}+{f_} != 2")
    return rep


def _graph_connected(g: Graph) -> bool:
    if g.n <= 1:
        return True
    adj: dict[int, list[int]] = {v: [] for v in range(g.n)}
    for u, v in g.edges:
        adj[u].append(v)
        adj[v].append(u)
    seen = {0}
    stack = [0]
    while stack:
        x = stack.pop()
        for y in adj[x]:
            if y not in seen:
                seen.add(y)
                stack.append(y)
    return len(seen) == g.n


def planarize(emb: Embedding) -> Planarization:
    return emb.planarize()


# ---------------------------------------------------------------------------
# Whole-embedding transformations
# ---------------------------------------------------------------------------


def mirror(emb: Embedding) -> Embedding:
    """Reflect: reverse all rotations and flip all crossing signs."""
    cr = tuple(tuple(Crossing(c.other, flip(c.sign)) for c in lst) for lst in emb.crossings)
    rot = tuple(tuple(reversed(r)) for r in emb.rotations)
    outer = emb.outer.twin if emb.outer is not None else None
    return Embedding(emb.graph, cr, rot, outer)


def relabel(emb: Embedding, perm: Sequence[int]) -> Embedding:
    """Rename vertex ``v`` to ``perm[v]``; edges keep their ids.

    Edges whose tail/head swap get their crossing lists reversed and their
    signs flipped in the lists of the edges they cross.
    """
    n = emb.n
    new_edges = []
    swapped = []
    for u, v in emb.edges:
        a, b = perm[u], perm[v]
        swapped.append(a > b)
        new_edges.append((min(a, b), max(a, b)))
    cr = []
    for e, lst in enumerate(emb.crossings):
        items = [Crossing(c.other, flip(c.sign) if swapped[c.other] else c.sign) for c in lst]
        if swapped[e]:
            items = [Crossing(c.other, flip(c.sign)) for c in reversed(items)]
        cr.append(tuple(items))
    rot = [()] * n
    for v in range(n):
        rot[perm[v]] = emb.rotations[v]
    outer = emb.outer
    if outer is not None and swapped[outer.edge]:
        k = len(emb.crossings[outer.edge])
        outer = Dart(outer.edge, k - outer.seg, not outer.rev)
    return Embedding(Graph(n, tuple(new_edges)), tuple(cr), tuple(rot), outer)


def renumber_edges(emb: Embedding, order: Sequence[int]) -> Embedding:
    """Reorder edges: new edge ``i`` is old edge ``order[i]``."""
    inv = {old: new for new, old in enumerate(order)}
    edges = tuple(emb.edges[old] for old in order)
    cr = tuple(
        tuple(Crossing(inv[c.other], c.sign) for c in emb.crossings[old]) for old in order
    )
    rot = tuple(tuple(inv[e] for e in r) for r in emb.rotations)
    outer = emb.outer
    if outer is not None:
        outer = Dart(inv[outer.edge], outer.seg, outer.rev)
    return Embedding(Graph(emb.n, edges), cr, rot, outer)


def face_count(emb: Embedding) -> int:
    return len(emb.planarize().faces)
