"""Crossing-pattern predicates, triangle-crossing taxonomy and configuration II."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from enum import Enum
from itertools import combinations
from typing import Iterable

from fancross.embedding import LR, Embedding, Planarization, flip


class PreconditionError(ValueError):
    pass


# ---------------------------------------------------------------------------
# Fans, covers, independent crossings
# ---------------------------------------------------------------------------


def fan_of(emb: Embedding, v: int, target: int) -> list[int]:
    """Edges incident to ``v`` that cross ``target``, in order along ``target``."""
    return [c.other for c in emb.crossings[target] if v in emb.edges[c.other]]


def cover_of(emb: Embedding, v: int) -> list[int]:
    """Edges crossed at least twice by edges incident to ``v``."""
    return [e for e in range(emb.m) if len(fan_of(emb, v, e)) >= 2]


def covers(emb: Embedding) -> dict[int, set[int]]:
    """Map edge -> set of vertices covering it."""
    out: dict[int, set[int]] = {}
    for e in range(emb.m):
        count: dict[int, int] = {}
        for c in emb.crossings[e]:
            for x in emb.edges[c.other]:
                count[x] = count.get(x, 0) + 1
        out[e] = {x for x, k in count.items() if k >= 2}
    return out


def independent_crossings(emb: Embedding) -> list[tuple[int, int, int]]:
    """Witnesses ``(host, f, g)``: ``host`` is crossed by independent ``f`` and ``g``."""
    out = []
    for h in range(emb.m):
        xs = emb.crossers(h)
        for f, g in combinations(xs, 2):
            if not emb.graph.adjacent(f, g):
                out.append((h, min(f, g), max(f, g)))
    return out


def is_adjacency_crossing(emb: Embedding) -> bool:
    return not independent_crossings(emb)


def common_vertex(emb: Embedding, edges: Iterable[int]) -> set[int]:
    it = iter(edges)
    first = next(it, None)
    if first is None:
        return set()
    common = set(emb.edges[first])
    for e in it:
        common &= set(emb.edges[e])
    return common


def is_fan_crossing(emb: Embedding) -> bool:
    return all(len(xs) < 2 or common_vertex(emb, xs) for xs in map(emb.crossers, range(emb.m)))


def is_fan_crossing_free(emb: Embedding) -> bool:
    """No edge is crossed by two adjacent edges."""
    for h in range(emb.m):
        for f, g in combinations(emb.crossers(h), 2):
            if emb.graph.adjacent(f, g):
                return False
    return True


def is_one_planar(emb: Embedding) -> bool:
    return all(len(lst) <= 1 for lst in emb.crossings)


# ---------------------------------------------------------------------------
# Triangle-crossings
# ---------------------------------------------------------------------------


def triangles(emb: Embedding) -> list[tuple[int, int, int]]:
    adj = [set() for _ in range(emb.n)]
    for a, b in emb.edges:
        adj[a].add(b)
        adj[b].add(a)
    out = []
    for a, b in emb.edges:
        for c in adj[a] & adj[b]:
            if c > b:
                out.append((a, b, c))
    return sorted(out)


def crossed_triangles(emb: Embedding) -> dict[tuple[int, int, int], list[int]]:
    """Triangle (sorted ids) -> edges crossing all three of its edges."""
    out: dict[tuple[int, int, int], list[int]] = {}
    for tri in triangles(emb):
        a, b, c = tri
        te = {emb.edge_id(a, b), emb.edge_id(b, c), emb.edge_id(a, c)}
        for e in range(emb.m):
            if te <= set(emb.crossers(e)):
                out.setdefault(tri, []).append(e)
    return out


def triangle_crossing_edges(emb: Embedding) -> set[int]:
    return {e for es in crossed_triangles(emb).values() for e in es}


class CrosserClass(str, Enum):
    NEEDLE = "needle"
    A_HOOK = "a-hook"
    C_HOOK = "c-hook"
    A_ARROW = "a-arrow"
    C_ARROW = "c-arrow"
    A_SICKLE = "a-sickle"
    C_SICKLE = "c-sickle"
    CW = "cw"
    CCW = "ccw"
    OTHER = "other"


_TABLE = {
    ("ac",): CrosserClass.NEEDLE,
    ("ab",): CrosserClass.A_HOOK,
    ("bc",): CrosserClass.C_HOOK,
    ("ac", "ab"): CrosserClass.A_ARROW,
    ("ac", "bc"): CrosserClass.C_ARROW,
    ("ab", "ac"): CrosserClass.A_SICKLE,
    ("bc", "ac"): CrosserClass.C_SICKLE,
    ("ac", "bc", "ab"): CrosserClass.CW,
    ("ac", "ab", "bc"): CrosserClass.CCW,
}

_CW_ROTATIONS = {("ac", "bc", "ab"), ("bc", "ab", "ac"), ("ab", "ac", "bc")}

# from the inner endpoint the roles of b and c are exchanged
_SWAP_BC = {"ac": "ab", "ab": "ac", "bc": "bc"}


@dataclass(frozen=True)
class TriangleCrossingContext:
    a: int
    b: int
    c: int
    ab: int
    bc: int
    ac: int
    triangle_crossers: tuple[int, ...]
    apex: int | None
    inner: int | None
    direction: str
    e_i: int
    e_j: int | None
    classes: dict[int, CrosserClass] = field(hash=False)
    sequences: dict[int, tuple[str, ...]] = field(hash=False)
    viewpoint: dict[int, str | None] = field(hash=False)
    refine: dict[int, str] = field(hash=False)
    apex_outside: bool = True
    normalized: bool = True

    @property
    def triangle(self) -> tuple[int, int, int]:
        return (self.a, self.b, self.c)

    @property
    def key(self) -> tuple[int, int, int]:
        return tuple(sorted((self.a, self.b, self.c)))

    @property
    def edges(self) -> tuple[int, int, int]:
        return (self.ab, self.bc, self.ac)

    def members(self, *classes: CrosserClass, viewpoint: str | None = "u") -> list[int]:
        return sorted(
            e for e, k in self.classes.items()
            if k in classes and (viewpoint is None or self.viewpoint.get(e) == viewpoint)
        )

    def histogram(self) -> dict[str, int]:
        out: dict[str, int] = {}
        for e, k in self.classes.items():
            key = k.value if self.viewpoint.get(e) in (None, "u") else f"{k.value}@v"
            out[key] = out.get(key, 0) + 1
        for e, r in self.refine.items():
            out[r] = out.get(r, 0) + 1
        return dict(sorted(out.items()))


def _read_from(emb: Embedding, g: int, x: int) -> list[int]:
    """Crossers of ``g`` in order when walking from endpoint ``x``."""
    xs = emb.crossers(g)
    return xs if emb.edges[g][0] == x else xs[::-1]


def _position_on(emb: Embedding, host: int, other: int, start: int) -> int:
    """Index of ``other`` along ``host`` counted from vertex ``start``."""
    i = emb.position(host, other)
    return i if emb.edges[host][0] == start else len(emb.crossings[host]) - 1 - i


def triangle_context(
    emb: Embedding,
    tri: tuple[int, int, int],
    crossers: list[int],
    normalize: bool = True,
) -> TriangleCrossingContext:
    """Context of a crossed triangle with ``crossers`` its triangle-crossing edges.

    The labeling (a, b, c) is read off the lowest-id triangle-crossing edge
    walking from the apex: it crosses {a,c}, {b,c}, {a,b} in this order. With
    ``normalize=False`` the labels are the sorted ids instead.
    """
    crossers = sorted(crossers)
    common = common_vertex(emb, crossers)
    ref = crossers[0]
    if len(crossers) >= 2:
        apex = min(common) if common else None
    else:
        apex = emb.edges[ref][0]
    x0 = apex if apex is not None else emb.edges[ref][0]
    inner = None
    if len(crossers) == 1:
        inner = emb.edges[ref][1] if emb.edges[ref][0] == x0 else emb.edges[ref][0]
    tri_edges = {emb.edge_id(p, q) for p, q in combinations(tri, 2)}
    if normalize:
        seq = [h for h in _read_from(emb, ref, x0) if h in tri_edges]
        first, second = emb.edges[seq[0]], emb.edges[seq[1]]
        c = (set(first) & set(second)).pop()
        a = (set(first) - {c}).pop()
        b = (set(second) - {c}).pop()
    else:
        a, b, c = tri
    ab, bc, ac = emb.edge_id(a, b), emb.edge_id(b, c), emb.edge_id(a, c)
    name = {ab: "ab", bc: "bc", ac: "ac"}

    # sides: region of the apex is "outside"
    pl = Planarization(emb)
    label = pl.regions(barrier_edges=(ab, bc, ac))
    apex_region = pl.vertex_region(x0, label)
    outer_region = label[pl.outer_face]
    apex_outside = outer_region in apex_region

    classes: dict[int, CrosserClass] = {}
    sequences: dict[int, tuple[str, ...]] = {}
    viewpoint: dict[int, str | None] = {}
    crossing_any = sorted({o for t in (ab, bc, ac) for o in emb.crossers(t)})
    for g in crossing_any:
        ends = emb.edges[g]
        if x0 in ends:
            vp, start, swap = "u", x0, False
        elif inner is not None and inner in ends:
            vp, start, swap = "v", inner, True
        else:
            vp, start, swap = None, ends[0], False
        s = tuple(name[h] for h in _read_from(emb, g, start) if h in name)
        if swap:
            s = tuple(_SWAP_BC[x] for x in s)
        sequences[g] = s
        viewpoint[g] = vp
        if g in crossers:
            classes[g] = CrosserClass.CW if s in _CW_ROTATIONS else CrosserClass.CCW
        elif vp is None:
            classes[g] = CrosserClass.OTHER
        else:
            classes[g] = _TABLE.get(s, CrosserClass.OTHER)
        if classes[g] in (CrosserClass.CW, CrosserClass.CCW) and g not in crossers:
            classes[g] = CrosserClass.OTHER

    cw = [g for g in crossers if classes[g] is CrosserClass.CW]
    ccw = [g for g in crossers if classes[g] is CrosserClass.CCW]
    if cw and ccw:
        direction = "both"
    elif cw:
        direction = "cw"
    else:
        direction = "ccw"
    e_i = cw[0] if cw else ccw[0]
    e_j = ccw[0] if (cw and ccw) else None

    refine: dict[int, str] = {}
    if e_j is not None:
        pos = {g: _position_on(emb, ac, g, a) for g in emb.crossers(ac)}
        pi, pj = pos[e_i], pos[e_j]
        step = 1 if pi > pj else -1

        def beyond(p: int, ref_p: int) -> bool:
            return (p - ref_p) * step > 0

        for g, k in classes.items():
            if viewpoint[g] != "u" or g not in pos:
                continue
            p = pos[g]
            if k is CrosserClass.NEEDLE:
                if beyond(p, pi):
                    refine[g] = "N1"
                elif beyond(pj, p):
                    refine[g] = "N3"
                else:
                    refine[g] = "N2"
            elif k is CrosserClass.CCW:
                refine[g] = "CC_l" if beyond(p, pi) else "CC_r"
            elif k is CrosserClass.CW:
                refine[g] = "C_l" if beyond(pj, p) else "C_r"

    return TriangleCrossingContext(
        a=a, b=b, c=c, ab=ab, bc=bc, ac=ac,
        triangle_crossers=tuple(crossers),
        apex=apex, inner=inner, direction=direction,
        e_i=e_i, e_j=e_j,
        classes=classes, sequences=sequences, viewpoint=viewpoint, refine=refine,
        apex_outside=apex_outside, normalized=normalize,
    )


def triangle_crossings_direct(emb: Embedding) -> list[TriangleCrossingContext]:
    return [triangle_context(emb, tri, es) for tri, es in sorted(crossed_triangles(emb).items())]


def triangle_crossings_via_cover(emb: Embedding) -> set[int]:
    """Edges covered by two distinct vertices.

    Without independent crossings these are exactly the triangle-crossing
    edges: an edge crossed by two edges at ``x`` and one more at ``y`` is
    crossed by the three edges of a triangle through ``x`` and ``y``.
    """
    if not is_adjacency_crossing(emb):
        raise PreconditionError("the cover characterization needs an adjacency-crossing embedding")
    cov = covers(emb)
    return {e for e, xs in cov.items() if len(xs) >= 2}


def classify_crossers(ctx: TriangleCrossingContext, emb: Embedding | None = None) -> dict[int, CrosserClass]:
    if not ctx.normalized:
        raise PreconditionError("classify_crossers needs a normalized context")
    return dict(ctx.classes)


# ---------------------------------------------------------------------------
# Configuration II
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ConfigIIInstance:
    base: int
    u: int
    v: int
    apex: int
    straight: tuple[int, ...]
    curved: tuple[int, ...]
    curve_side: dict[int, str] = field(hash=False)
    semi_covered: dict[int, bool] = field(hash=False)
    augmented: bool = False

    @property
    def crossers(self) -> tuple[int, ...]:
        return tuple(sorted(self.straight + self.curved))


def crossing_side(emb: Embedding, base: int, g: int, apex: int) -> str:
    """Side of ``base`` ("L" or "R") from which ``g``, oriented away from ``apex``, crosses it."""
    s = emb.sign(base, g)
    if emb.edges[g][1] == apex:
        s = flip(s)
    return "L" if s == LR else "R"


def _segments_between(emb: Embedding, e: int, i: int, j: int) -> list[tuple[int, int]]:
    """Segments of ``e`` between points ``i`` and ``j`` (0 = tail)."""
    lo, hi = sorted((i, j))
    return [(e, s) for s in range(lo, hi)]


def _point_of(emb: Embedding, e: int, x: int) -> int:
    if x == emb.edges[e][0]:
        return 0
    return len(emb.crossings[e]) + 1


def enclosed_endpoint(emb: Embedding, base: int, apex: int, g: int, s: int, pl: Planarization | None = None) -> int | None:
    """Base endpoint inside the cycle through ``apex`` along ``g``, ``base`` and ``s``."""
    pl = pl or Planarization(emb)
    pg = emb.position(base, g) + 1
    ps = emb.position(base, s) + 1
    segs = []
    segs += _segments_between(emb, g, _point_of(emb, g, apex), emb.position(g, base) + 1)
    segs += _segments_between(emb, s, _point_of(emb, s, apex), emb.position(s, base) + 1)
    segs += _segments_between(emb, base, pg, ps)
    label = pl.regions(barrier_segments=segs)
    outer = label[pl.outer_face]
    u, v = emb.edges[base]
    inside = [x for x in (u, v) if outer not in pl.vertex_region(x, label)]
    return inside[0] if len(inside) == 1 else None


def _semi_covered(emb: Embedding, g: int, base: int, apex: int, by: int | None, cov) -> bool:
    if by is None or by not in cov[g]:
        return False
    return _read_from(emb, g, apex)[0] == base


def config_ii_instances(emb: Embedding, check: bool = True) -> list[ConfigIIInstance]:
    """Configuration-II instances, one per (base, apex) pair."""
    if check and not is_adjacency_crossing(emb):
        raise PreconditionError("configuration II is defined for adjacency-crossing embeddings")
    pl = None
    cov = covers(emb)
    out = []
    for base in range(emb.m):
        xs = emb.crossers(base)
        if len(xs) < 2:
            continue
        u, v = emb.edges[base]
        apices = sorted({x for g in xs for x in emb.edges[g]})
        for t in apices:
            fan = [g for g in xs if t in emb.edges[g]]
            if len(fan) < 2:
                continue
            straight = tuple(g for g in fan if crossing_side(emb, base, g, t) == "L")
            curved = tuple(g for g in fan if crossing_side(emb, base, g, t) == "R")
            if not straight or not curved:
                continue
            pl = pl or Planarization(emb)
            side: dict[int, str] = {}
            for g in curved:
                inside = enclosed_endpoint(emb, base, t, g, straight[0], pl)
                side[g] = "left" if inside == u else "right" if inside == v else "unknown"
            semi: dict[int, bool] = {}
            for g in curved:
                semi[g] = _semi_covered(emb, g, base, t, u if side[g] == "left" else v if side[g] == "right" else None, cov)
            sides = {x for x in side.values()}
            for g in straight:
                other = v if sides == {"left"} else u if sides == {"right"} else None
                semi[g] = _semi_covered(emb, g, base, t, other, cov)
            out.append(ConfigIIInstance(base, u, v, t, straight, curved, side, semi))
    return out


# ---------------------------------------------------------------------------
# Report
# ---------------------------------------------------------------------------


@dataclass
class PatternReport:
    n: int
    m: int
    crossings: int
    crossers: dict[int, list[int]]
    independent: list[tuple[int, int, int]]
    triangles: list[TriangleCrossingContext]
    config_ii: list[ConfigIIInstance]
    adjacency_crossing: bool
    fan_crossing: bool
    fan_planar: bool
    fan_crossing_free: bool
    one_planar: bool

    @property
    def density_bound(self) -> int:
        return 5 * self.n - 10

    @property
    def within_density(self) -> bool:
        return self.n < 3 or self.m <= self.density_bound

    def to_dict(self) -> dict:
        hist: dict[str, int] = {}
        for ctx in self.triangles:
            for k, v in ctx.histogram().items():
                hist[k] = hist.get(k, 0) + v
        return {
            "verdicts": {
                "adjacency_crossing": self.adjacency_crossing,
                "fan_crossing": self.fan_crossing,
                "fan_planar": self.fan_planar,
                "fan_crossing_free": self.fan_crossing_free,
                "one_planar": self.one_planar,
            },
            "density": {"n": self.n, "m": self.m, "bound": self.density_bound},
            "crossings": self.crossings,
            "independent_crossings": [list(w) for w in self.independent],
            "triangle_crossings": [
                {
                    "triangle": list(ctx.triangle),
                    "edges": list(ctx.triangle_crossers),
                    "apex": ctx.apex,
                    "direction": ctx.direction,
                }
                for ctx in self.triangles
            ],
            "class_histogram": dict(sorted(hist.items())),
            "config_ii": [
                {
                    "base": inst.base,
                    "apex": inst.apex,
                    "straight": list(inst.straight),
                    "curved": list(inst.curved),
                    "curve_side": {str(k): v for k, v in sorted(inst.curve_side.items())},
                    "semi_covered": {str(k): v for k, v in sorted(inst.semi_covered.items())},
                }
                for inst in self.config_ii
            ],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True)


def verdicts(emb: Embedding) -> PatternReport:
    indep = independent_crossings(emb)
    adj = not indep
    tris = triangle_crossings_direct(emb)
    conf = config_ii_instances(emb, check=False) if adj else []
    fan = is_fan_crossing(emb)
    return PatternReport(
        n=emb.n,
        m=emb.m,
        crossings=emb.crossing_count(),
        crossers={e: emb.crossers(e) for e in range(emb.m)},
        independent=indep,
        triangles=tris,
        config_ii=conf,
        adjacency_crossing=adj,
        fan_crossing=fan,
        fan_planar=adj and not conf,
        fan_crossing_free=is_fan_crossing_free(emb),
        one_planar=is_one_planar(emb),
    )
