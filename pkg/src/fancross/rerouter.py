"""Rerouting transformations: triangle-crossing elimination and fan-planarization.

Each lemma picks the edges to redraw and, per edge, the set of edges the new
curve may cross (its corridor). The actual curve is the fewest-crossing walk
through the planarization inside that corridor, so the new edge is crossed by
a subset of the edges the lemma's route would meet. Bundles are redrawn one
edge at a time in the lemma's sort order; an edge without a route yet is
retried after the others have moved.

Every surgery is recorded in a :class:`RerouteTrace`; replaying the trace on
the input reproduces the output exactly.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Iterable, Mapping

from fancross.embedding import Dart, Embedding, Planarization, validate
from fancross.patterns import (
    ConfigIIInstance,
    CrosserClass,
    TriangleCrossingContext,
    config_ii_instances,
    covers,
    crossed_triangles,
    is_adjacency_crossing,
    is_fan_crossing,
    triangle_context,
    triangle_crossings_direct,
)
from fancross.surgery import (
    RouteError,
    SurgeryError,
    apply_route,
    common_faces,
    corridor_route,
    delete_edge,
    face_corners,
    walks,
)


class LemmaError(ValueError):
    """A lemma does not apply or its postconditions do not hold."""


class RerouteFailure(RuntimeError):
    """A pipeline could not make progress."""


# ---------------------------------------------------------------------------
# Trace
# ---------------------------------------------------------------------------


@dataclass
class TraceStep:
    lemma: str
    target: list[int]
    op: str
    edge: int
    endpoints: tuple[int, int]
    start: int | None = None
    crossed: list[tuple[int, int, bool]] = field(default_factory=list)
    start_after: int | None = None
    end_after: int | None = None
    old: list[int] = field(default_factory=list)
    new: list[int] = field(default_factory=list)
    delta: int = 0

    def to_dict(self) -> dict:
        return {
            "lemma": self.lemma,
            "target": self.target,
            "op": self.op,
            "edge": self.edge,
            "endpoints": list(self.endpoints),
            "start": self.start,
            "crossed": [list(c) for c in self.crossed],
            "start_after": self.start_after,
            "end_after": self.end_after,
            "old_crossers": self.old,
            "new_crossers": self.new,
            "crossing_delta": self.delta,
        }

    @classmethod
    def from_dict(cls, d: Mapping) -> "TraceStep":
        return cls(
            lemma=d["lemma"],
            target=list(d["target"]),
            op=d["op"],
            edge=d["edge"],
            endpoints=tuple(d["endpoints"]),
            start=d["start"],
            crossed=[(c[0], c[1], bool(c[2])) for c in d["crossed"]],
            start_after=d["start_after"],
            end_after=d["end_after"],
            old=list(d["old_crossers"]),
            new=list(d["new_crossers"]),
            delta=d["crossing_delta"],
        )


@dataclass
class RerouteTrace:
    steps: list[TraceStep] = field(default_factory=list)
    lemmas: list[dict] = field(default_factory=list)
    rollbacks: list[str] = field(default_factory=list)
    retracted: list[str] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)

    def lemma_names(self) -> list[str]:
        return [entry["lemma"] for entry in self.lemmas]

    def to_dict(self) -> dict:
        return {
            "steps": [s.to_dict() for s in self.steps],
            "lemmas": self.lemmas,
            "rollbacks": self.rollbacks,
            "retracted": self.retracted,
            "notes": self.notes,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)

    @classmethod
    def from_dict(cls, d: Mapping) -> "RerouteTrace":
        return cls(
            steps=[TraceStep.from_dict(s) for s in d["steps"]],
            lemmas=list(d.get("lemmas", [])),
            rollbacks=list(d.get("rollbacks", [])),
            retracted=list(d.get("retracted", [])),
            notes=list(d.get("notes", [])),
        )

    def replay(self, emb: Embedding) -> Embedding:
        for s in self.steps:
            emb = _apply_step(emb, s)
        return emb


def _apply_step(emb: Embedding, s: TraceStep) -> Embedding:
    if s.op == "delete":
        return delete_edge(emb, s.edge)
    crossed = [Dart(e, k, r) for e, k, r in s.crossed]
    if s.op == "insert":
        return apply_route(emb, emb.m, s.start, crossed, s.start_after, s.end_after, endpoints=s.endpoints)
    return apply_route(emb, s.edge, s.start, crossed, s.start_after, s.end_after)


class _Session:
    """Current embedding plus the trace of surgeries that produced it."""

    def __init__(self, emb: Embedding, trace: RerouteTrace | None = None) -> None:
        self.emb = emb
        self.trace = trace if trace is not None else RerouteTrace()

    def snapshot(self) -> tuple[Embedding, int]:
        return self.emb, len(self.trace.steps)

    def restore(self, snap: tuple[Embedding, int], why: str) -> None:
        self.emb = snap[0]
        del self.trace.steps[snap[1]:]
        self.trace.retracted.append(why)

    def _run(self, step: TraceStep) -> None:
        before = self.emb
        try:
            after = _apply_step(before, step)
        except SurgeryError as err:
            self.trace.rollbacks.append(f"{step.lemma}: {err}")
            raise LemmaError(f"{step.lemma}: surgery rolled back") from err
        if step.op == "reroute":
            step.old = before.crossers(step.edge)
            step.new = after.crossers(step.edge)
        elif step.op == "insert":
            step.new = after.crossers(after.m - 1)
        else:
            step.old = before.crossers(step.edge)
        step.delta = after.crossing_count() - before.crossing_count()
        self.trace.steps.append(step)
        self.emb = after

    def reroute(
        self,
        lemma: str,
        target: Iterable[int],
        edge: int,
        allowed: Mapping[int, object],
        start: int | None = None,
    ) -> None:
        try:
            u, path, s_after, e_after = corridor_route(self.emb, edge, allowed, start)
        except RouteError as err:
            raise LemmaError(f"{lemma}: no route for edge {edge}") from err
        step = TraceStep(
            lemma, list(target), "reroute", edge, self.emb.edges[edge], u,
            [tuple(d) for d in path if d.edge != edge], s_after, e_after,
        )
        self._run(step)

    def reroute_path(self, lemma: str, target, edge: int, start: int, path, s_after: int, e_after: int) -> None:
        step = TraceStep(
            lemma, list(target), "reroute", edge, self.emb.edges[edge], start,
            [tuple(d) for d in path if d.edge != edge], s_after, e_after,
        )
        self._run(step)

    def delete(self, lemma: str, target, edge: int) -> None:
        self._run(TraceStep(lemma, list(target), "delete", edge, self.emb.edges[edge]))

    def insert(self, lemma: str, target, u: int, v: int, s_after: int, e_after: int, path=()) -> None:
        step = TraceStep(
            lemma, list(target), "insert", self.emb.m, (u, v), u,
            [tuple(d) for d in path], s_after, e_after,
        )
        self._run(step)

    def bundle(self, lemma: str, target, jobs: list[tuple[int, Mapping[int, object]]]) -> None:
        """Reroute edges in order; edges without a route are retried later."""
        pending = list(jobs)
        while pending:
            left = []
            for edge, allowed in pending:
                try:
                    self.reroute(lemma, target, edge, allowed)
                except LemmaError:
                    if self.trace.rollbacks and self.trace.rollbacks[-1].startswith(lemma):
                        raise
                    left.append((edge, allowed))
            if len(left) == len(pending):
                raise LemmaError(f"{lemma}: no route for edges {[e for e, _ in left]}")
            pending = left


# ---------------------------------------------------------------------------
# Triangle contexts
# ---------------------------------------------------------------------------


def normalize_triangle(emb: Embedding, ctx: TriangleCrossingContext) -> tuple[Embedding, TriangleCrossingContext]:
    """Relabel the context so the first triangle-crossing edge crosses {a,c}, {b,c}, {a,b}.

    The embedding is returned unchanged: normalization only renames the
    triangle's corners, and the apex side is taken as the outside.
    """
    if ctx.normalized:
        return emb, ctx
    return emb, triangle_context(emb, ctx.key, list(ctx.triangle_crossers), normalize=True)


@dataclass(frozen=True)
class _View:
    """A triangle seen from one endpoint of its triangle-crossing edges."""

    ctx: TriangleCrossingContext
    viewpoint: str
    apex: int
    a: int
    b: int
    c: int
    ab: int
    bc: int
    ac: int

    def members(self, *classes: CrosserClass) -> list[int]:
        return self.ctx.members(*classes, viewpoint=self.viewpoint)


def _view(ctx: TriangleCrossingContext, viewpoint: str = "u") -> _View:
    if viewpoint == "u":
        apex = ctx.apex if ctx.apex is not None else None
        return _View(ctx, "u", apex, ctx.a, ctx.b, ctx.c, ctx.ab, ctx.bc, ctx.ac)
    if ctx.inner is None:
        raise LemmaError("the inner viewpoint needs a single triangle-crossing edge")
    # from the inner endpoint b and c change roles
    return _View(ctx, "v", ctx.inner, ctx.a, ctx.c, ctx.b, ctx.ac, ctx.bc, ctx.ab)


_SIDE = (CrosserClass.A_HOOK, CrosserClass.A_ARROW, CrosserClass.A_SICKLE)


def _pos_from(emb: Embedding, host: int, other: int, start: int) -> int:
    i = emb.position(host, other)
    return i if emb.edges[host][0] == start else len(emb.crossings[host]) - 1 - i


def _crossed_keys(emb: Embedding) -> set[tuple[int, int, int]]:
    return set(crossed_triangles(emb))


def _check_triangle_progress(before: set, emb: Embedding, target) -> None:
    if not validate(emb).ok:
        raise LemmaError("output is not a valid embedding")
    if not is_adjacency_crossing(emb):
        raise LemmaError("output has an independent crossing")
    after = _crossed_keys(emb)
    if target in after:
        raise LemmaError(f"triangle {target} is still crossed")
    if not after <= before:
        raise LemmaError(f"new crossed triangles {sorted(after - before)}")


_BUNDLE_RANK = {
    "S_c": 0, "N1": 1, "CC_l": 2, "H_c": 3, "A_c": 4, "CC_r": 5, "N2": 6,
    "C_r": 7, "A_a": 8, "H_a": 9, "C_l": 10, "N3": 11, "S_a": 12,
}

_CLASS_TAG = {
    CrosserClass.C_SICKLE: "S_c",
    CrosserClass.C_HOOK: "H_c",
    CrosserClass.C_ARROW: "A_c",
    CrosserClass.A_ARROW: "A_a",
    CrosserClass.A_HOOK: "H_a",
    CrosserClass.A_SICKLE: "S_a",
}


def bundle_order(emb: Embedding, ctx: TriangleCrossingContext) -> list[int]:
    """Crossers of the triangle in the bidirectional lemma's sort order."""
    name = {ctx.ab: "ab", ctx.bc: "bc", ctx.ac: "ac"}
    start_of = {"ab": ctx.a, "bc": ctx.b, "ac": ctx.a}

    def key(g: int):
        tag = ctx.refine.get(g) or _CLASS_TAG.get(ctx.classes[g])
        rank = _BUNDLE_RANK.get(tag, len(_BUNDLE_RANK))
        first = next(h for h in emb.crossers(g) if h in name)
        return (rank, name[first], _pos_from(emb, first, g, start_of[name[first]]), g)

    return sorted(ctx.classes, key=key)


# ---------------------------------------------------------------------------
# Triangle lemmas
# ---------------------------------------------------------------------------


def _bidirectional(s: _Session, ctx: TriangleCrossingContext) -> None:
    if ctx.direction != "both":
        raise LemmaError("the triangle is not crossed in both directions")
    emb = s.emb
    jobs = []
    for g in bundle_order(emb, ctx):
        if ctx.viewpoint.get(g) != "u":
            continue
        k = ctx.classes[g]
        allowed = set(emb.crossers(g))
        if k is CrosserClass.C_HOOK:
            allowed = (allowed - {ctx.bc}) | {ctx.ac}
        elif k is CrosserClass.A_HOOK:
            allowed = (allowed - {ctx.ab}) | {ctx.ac}
        if g in ctx.triangle_crossers or k in (CrosserClass.C_HOOK, CrosserClass.A_HOOK):
            jobs.append((g, dict.fromkeys(allowed)))
    s.bundle("bidirectional", ctx.key, jobs)


def _side_edge(s: _Session, ctx: TriangleCrossingContext, viewpoint: str) -> None:
    if ctx.direction != "cw":
        raise LemmaError("side-edge rerouting needs clockwise triangle-crossing edges")
    vw = _view(ctx, viewpoint)
    emb = s.emb
    side = vw.members(*_SIDE)
    if not side:
        raise LemmaError(f"no a-hook, a-arrow or a-sickle from viewpoint {viewpoint}")
    # rightmost: closest to b along {a,b}
    on_ab = [g for g in side if g in emb.crossers(vw.ab)]
    f = max(on_ab, key=lambda g: _pos_from(emb, vw.ab, g, vw.a))
    kind = ctx.classes[f]
    tri = list(ctx.triangle_crossers)
    fan_a = [h for h in emb.crossers(f) if vw.a in emb.edges[h]]
    jobs: list[tuple[int, dict]] = []
    if kind is CrosserClass.A_HOOK:
        pf = _pos_from(emb, vw.ab, f, vw.a)
        for g in emb.crossers(vw.ab):
            if g in tri and _pos_from(emb, vw.ab, g, vw.a) > pf:
                jobs.append((g, dict.fromkeys(fan_a + [vw.ab])))
    elif kind is CrosserClass.A_SICKLE:
        pos = {g: _pos_from(emb, vw.ac, g, vw.a) for g in emb.crossers(vw.ac)}
        e1 = min(tri, key=lambda g: abs(pos[g] - pos[f]))
        lo, hi = sorted((pos[e1], pos[f]))
        hs = [g for g in emb.crossers(vw.ac) if lo < pos[g] <= hi or g == f]
        hs = [g for g in hs if g not in tri]
        hs.sort(key=lambda g: abs(pos[g] - pos[e1]))
        for h in hs:
            jobs.append((h, dict.fromkeys(emb.crossers(h))))
        for g in tri:
            jobs.append((g, dict.fromkeys(fan_a + [vw.ac])))
    else:
        arrows = [g for g in vw.members(CrosserClass.A_ARROW) if g != f]
        for g in tri:
            jobs.append((g, dict.fromkeys(fan_a + [vw.ac])))
        for g in arrows:
            jobs.append((g, dict.fromkeys(emb.crossers(g))))
    s.bundle(f"side-edge:{kind.value}@{viewpoint}", ctx.key, jobs)


def _needles_covered_by_c(emb: Embedding, vw: _View, f: int) -> list[int]:
    cov = covers(emb)
    p1 = _pos_from(emb, vw.ac, f, vw.a)
    out = []
    for g in vw.members(CrosserClass.NEEDLE):
        if _pos_from(emb, vw.ac, g, vw.a) < p1 and vw.c in cov[g]:
            out.append(g)
    return out


def _base_guide(emb: Embedding, vw: _View) -> int:
    ub = emb.edge_id(vw.apex, vw.b) if vw.apex is not None else None
    if ub is not None and ub in emb.crossers(vw.ac):
        return ub
    both = [g for g in emb.crossers(vw.bc) if g in emb.crossers(vw.ac)]
    if not both:
        raise LemmaError("no edge crosses both {a,c} and {b,c}")
    return min(both, key=lambda g: _pos_from(emb, vw.bc, g, vw.b))


def _preroute_needles(s: _Session, ctx: TriangleCrossingContext, viewpoint: str = "u") -> None:
    vw = _view(ctx, viewpoint)
    f = _base_guide(s.emb, vw)
    jobs = []
    for n_ in _needles_covered_by_c(s.emb, vw, f):
        seq = s.emb.crossers(n_)
        if s.emb.edges[n_][0] != vw.apex:
            seq = seq[::-1]
        after = seq[seq.index(vw.ac):]
        jobs.append((n_, dict.fromkeys(after)))
    if jobs:
        s.bundle(f"needles@{viewpoint}", ctx.key, jobs)


def _base(s: _Session, ctx: TriangleCrossingContext, viewpoint: str) -> None:
    if ctx.direction != "cw":
        raise LemmaError("base rerouting needs clockwise triangle-crossing edges")
    vw = _view(ctx, viewpoint)
    if vw.apex is None:
        raise LemmaError("triangle-crossing edges share no apex")
    if vw.members(*_SIDE):
        raise LemmaError("side edges present")
    _preroute_needles(s, ctx, viewpoint)
    emb = s.emb
    f = _base_guide(emb, vw)
    p1 = _pos_from(emb, vw.ac, f, vw.a)
    between = [g for g in emb.crossers(vw.ac) if _pos_from(emb, vw.ac, g, vw.a) < p1]
    s.reroute(f"base@{viewpoint}", ctx.key, vw.ab, dict.fromkeys(between), start=vw.a)


def _attempt(s: _Session, name: str, ctx: TriangleCrossingContext, fn) -> bool:
    before = _crossed_keys(s.emb)
    snap = s.snapshot()
    try:
        fn()
        _check_triangle_progress(before, s.emb, ctx.key)
    except LemmaError as err:
        s.restore(snap, f"{name} on {list(ctx.key)}: {err}")
        return False
    s.trace.lemmas.append({"lemma": name, "target": list(ctx.key)})
    return True


def _fallback_triangle(s: _Session, ctx: TriangleCrossingContext, slack: int = 2) -> bool:
    """Exhaustive single-edge reroute that removes the crossed triangle."""
    before = _crossed_keys(s.emb)
    emb = s.emb
    for edge in list(ctx.triangle_crossers) + list(ctx.edges):
        x, y = emb.edges[edge]
        budget = len(emb.crossings[edge]) + slack
        pl = Planarization(emb)
        options = sorted(
            walks(pl, x, y, budget, transparent=edge),
            key=lambda w: (sum(1 for d in w[1] if d.edge != edge), len(w[1])),
        )
        for s_after, path, e_after in options:
            snap = s.snapshot()
            try:
                s.reroute_path("search", ctx.key, edge, x, path, s_after, e_after)
                _check_triangle_progress(before, s.emb, ctx.key)
            except LemmaError as err:
                s.restore(snap, f"search on {list(ctx.key)}: {err}")
                continue
            s.trace.lemmas.append({"lemma": "search", "target": list(ctx.key)})
            s.trace.notes.append(f"triangle {list(ctx.key)} resolved by exhaustive search")
            return True
    return False


def _session_op(emb: Embedding, fn) -> Embedding:
    s = _Session(emb)
    fn(s)
    return s.emb


def eliminate_bidirectional(emb: Embedding, ctx: TriangleCrossingContext) -> Embedding:
    def run(s):
        before = _crossed_keys(s.emb)
        _bidirectional(s, ctx)
        _check_triangle_progress(before, s.emb, ctx.key)

    return _session_op(emb, run)


def eliminate_with_side_edge(emb: Embedding, ctx: TriangleCrossingContext, viewpoint: str | None = None) -> Embedding:
    views = [viewpoint] if viewpoint else ["u", "v"]

    def run(s):
        errors = []
        for vp in views:
            if vp == "v" and ctx.inner is None:
                continue
            if _attempt(s, f"side-edge@{vp}", ctx, lambda: _side_edge(s, ctx, vp)):
                return
            errors.append(s.trace.retracted[-1])
        raise LemmaError("; ".join(errors) or "no qualifying side edge")

    return _session_op(emb, run)


def preroute_covered_needles(emb: Embedding, ctx: TriangleCrossingContext, viewpoint: str = "u") -> Embedding:
    return _session_op(emb, lambda s: _preroute_needles(s, ctx, viewpoint))


def reroute_base(emb: Embedding, ctx: TriangleCrossingContext, viewpoint: str | None = None) -> Embedding:
    views = [viewpoint] if viewpoint else ["u", "v"]

    def run(s):
        errors = []
        for vp in views:
            if vp == "v" and ctx.inner is None:
                continue
            if _attempt(s, f"base@{vp}", ctx, lambda: _base(s, ctx, vp)):
                return
            errors.append(s.trace.retracted[-1])
        raise LemmaError("; ".join(errors) or "base rerouting does not apply")

    return _session_op(emb, run)


def _has_side_edges(ctx: TriangleCrossingContext) -> bool:
    return bool(ctx.members(*_SIDE, viewpoint="u") or (ctx.inner is not None and ctx.members(*_SIDE, viewpoint="v")))


def _phase(ctx: TriangleCrossingContext) -> int:
    if ctx.direction == "both":
        return 0
    if _has_side_edges(ctx):
        return 1
    return 2


def _resolve(s: _Session, ctx: TriangleCrossingContext, fallback: bool) -> None:
    plans = []
    if ctx.direction == "both":
        plans.append(("bidirectional", lambda: _bidirectional(s, ctx)))
    if ctx.direction == "cw":
        for vp in ("u", "v"):
            if vp == "v" and ctx.inner is None:
                continue
            if ctx.members(*_SIDE, viewpoint=vp):
                plans.append((f"side-edge@{vp}", lambda vp=vp: _side_edge(s, ctx, vp)))
        for vp in ("u", "v"):
            if vp == "v" and ctx.inner is None:
                continue
            plans.append((f"base@{vp}", lambda vp=vp: _base(s, ctx, vp)))
    for name, fn in plans:
        if _attempt(s, name, ctx, fn):
            return
    if fallback and _fallback_triangle(s, ctx):
        return
    raise RerouteFailure(f"no lemma removes the crossing of triangle {list(ctx.key)}")


def make_fan_crossing(emb: Embedding, fallback: bool = True) -> tuple[Embedding, RerouteTrace]:
    """Remove all triangle-crossings of an adjacency-crossing embedding.

    Triangles are handled one at a time: first those crossed in both
    directions, then those with side edges, then the rest; within a phase by
    ascending vertex triple.
    """
    if not validate(emb).ok:
        raise LemmaError("input is not a valid embedding")
    if not is_adjacency_crossing(emb):
        raise LemmaError("input is not adjacency-crossing")
    s = _Session(emb)
    guard = len(_crossed_keys(emb)) + 1
    while True:
        ctxs = triangle_crossings_direct(s.emb)
        if not ctxs:
            break
        guard -= 1
        if guard < 0:
            raise RerouteFailure("crossed-triangle count did not decrease")
        ctx = min(ctxs, key=lambda c: (_phase(c), c.key))
        _resolve(s, ctx, fallback)
    if not is_fan_crossing(s.emb):
        raise RerouteFailure("output is not fan-crossing")
    return s.emb, s.trace


# ---------------------------------------------------------------------------
# Configuration II
# ---------------------------------------------------------------------------


def _instance_keys(emb: Embedding) -> set[tuple[int, int]]:
    return {(frozenset(emb.edges[i.base]), i.apex) for i in config_ii_instances(emb, check=False)}


def _find_instance(emb: Embedding, inst: ConfigIIInstance) -> ConfigIIInstance | None:
    key = frozenset((inst.u, inst.v))
    for cur in config_ii_instances(emb, check=False):
        if frozenset(emb.edges[cur.base]) == key and cur.apex == inst.apex:
            return cur
    return None


def _check_conf_progress(before: set, emb: Embedding, key) -> None:
    if not validate(emb).ok:
        raise LemmaError("output is not a valid embedding")
    if not is_fan_crossing(emb):
        raise LemmaError("output is not fan-crossing")
    after = _instance_keys(emb)
    if key in after:
        raise LemmaError("the instance is still present")
    if not after <= before:
        raise LemmaError("new configuration-II instances")


def _conf_attempt(s: _Session, name: str, inst: ConfigIIInstance, fn) -> bool:
    key = (frozenset((inst.u, inst.v)), inst.apex)
    before = _instance_keys(s.emb)
    snap = s.snapshot()
    try:
        fn()
        _check_conf_progress(before, s.emb, key)
    except LemmaError as err:
        s.restore(snap, f"{name} on base {sorted(key[0])}: {err}")
        return False
    s.trace.lemmas.append({"lemma": name, "target": sorted(key[0]) + [inst.apex]})
    return True


def _augment(s: _Session, inst: ConfigIIInstance) -> list[int]:
    """Add missing {t,u}, {t,v}; returns the ids of the added edges."""
    added = []
    emb = s.emb
    corridor = set()
    for g in inst.crossers:
        corridor |= set(emb.crossers(g))
    corridor.discard(inst.base)
    for x in (inst.u, inst.v):
        if s.emb.edge_id(inst.apex, x) is not None:
            continue
        m = s.emb.m
        try:
            start, path, s_after, e_after = corridor_route(
                s.emb, m, dict.fromkeys(corridor), start=x, endpoints=(x, inst.apex)
            )
        except RouteError as err:
            raise LemmaError(f"augment: no route for {{{inst.apex},{x}}}") from err
        s.insert("augment", [inst.u, inst.v, inst.apex], x, inst.apex, s_after, e_after, path)
        added.append(m)
    return added


def augment_apex(emb: Embedding, inst: ConfigIIInstance) -> Embedding:
    """Add the edges {t,u} and {t,v} of an instance if they are missing."""
    s = _Session(emb)
    _augment(s, inst)
    return s.emb


def _left_curves(s: _Session, inst: ConfigIIInstance) -> None:
    """Reroute the curves on each side that lie between an eligible straight edge and their endpoint."""
    done = False
    for side, near in (("left", inst.u), ("right", inst.v)):
        emb = s.emb
        live = set(emb.crossers(inst.base))
        curves = [g for g in inst.curved if inst.curve_side.get(g) == side and g in live]
        if not curves:
            continue
        cov = covers(emb)
        pos = {g: _pos_from(emb, inst.base, g, near) for g in inst.crossers if g in live}
        for sedge in sorted((g for g in inst.straight if g in live), key=lambda g: pos[g]):
            if cov[sedge] - {near}:
                continue
            targets = [g for g in curves if pos[g] < pos[sedge]]
            if not targets:
                continue
            fan_near = [h for h in emb.crossers(sedge) if near in emb.edges[h]]
            jobs = []
            for g in targets:
                allowed = (set(emb.crossers(g)) | set(fan_near)) - {inst.base}
                jobs.append((g, dict.fromkeys(allowed)))
            s.bundle(f"left-curves:{side}", [inst.base, inst.apex], jobs)
            done = True
            break
    if not done:
        raise LemmaError("no straight edge with curves to reroute on its near side")


def _semi_covered(s: _Session, inst: ConfigIIInstance) -> None:
    semi = [g for g in inst.crossers if inst.semi_covered.get(g)]
    if not semi:
        raise LemmaError("no semi-covered edge")
    f = semi[0]
    others = inst.curved if f in inst.straight else inst.straight
    emb = s.emb
    jobs = [(g, dict.fromkeys(set(emb.crossers(g)) - {inst.base})) for g in others]
    s.bundle("semi-covered", [inst.base, inst.apex], jobs)


def reroute_left_curves(emb: Embedding, inst: ConfigIIInstance) -> Embedding:
    s = _Session(emb)
    if not _conf_attempt(s, "left-curves", inst, lambda: _left_curves(s, inst)):
        raise LemmaError(s.trace.retracted[-1])
    return s.emb


def reroute_via_semicovered(emb: Embedding, inst: ConfigIIInstance) -> Embedding:
    s = _Session(emb)
    if not _conf_attempt(s, "semi-covered", inst, lambda: _semi_covered(s, inst)):
        raise LemmaError(s.trace.retracted[-1])
    return s.emb


def _first_cw_neighbor(emb: Embedding, x: int, edge: int) -> int:
    """Neighbor of ``x`` along the edge clockwise after ``edge``."""
    rot = emb.rotations[x]
    i = rot.index(edge)
    e = rot[(i - 1) % len(rot)]
    a, b = emb.edges[e]
    return b if a == x else a


def _replacement_pairs(emb: Embedding, pl: Planarization, first: tuple[int, int]):
    """Candidate endpoints for the replacement edge: the rotation pair, then any co-facial pair."""
    yield first[0], first[1], "rotation"
    seen = {tuple(sorted(first))}
    for f in range(len(pl.faces)):
        nodes = sorted({x for x in pl.face_nodes(f) if x < emb.n})
        for i, x in enumerate(nodes):
            for y in nodes[i + 1:]:
                if (x, y) not in seen:
                    seen.add((x, y))
                    yield x, y, "co-facial"


def _replace_base(s: _Session, inst: ConfigIIInstance) -> None:
    target = [inst.u, inst.v, inst.apex]
    a = _first_cw_neighbor(s.emb, inst.u, inst.base)
    b = _first_cw_neighbor(s.emb, inst.v, inst.base)
    s.delete("replace-base", target, inst.base)
    emb = s.emb
    pl = Planarization(emb)
    for x, y, tag in _replacement_pairs(emb, pl, (a, b)):
        usable = x != y and emb.edge_id(x, y) is None
        faces = common_faces(pl, x, y) if usable else []
        if not faces:
            if tag == "rotation":
                why = "already an edge" if usable is False and x != y else "not co-facial"
                s.trace.notes.append(
                    f"base {{{inst.u},{inst.v}}}: rotation pair {{{x},{y}}} unusable ({why})"
                )
            continue
        f = faces[0]
        s.insert("replace-base", target, x, y, face_corners(pl, f, x)[0], face_corners(pl, f, y)[0])
        if tag != "rotation":
            s.trace.notes.append(f"base {{{inst.u},{inst.v}}} replaced by {{{x},{y}}} ({tag})")
        return
    raise LemmaError("no non-adjacent co-facial pair for the replacement edge")


def fan_planarize(emb: Embedding, reroute_first: bool = True) -> tuple[Embedding, RerouteTrace]:
    """Remove every configuration-II instance of a fan-crossing embedding.

    Each instance is first attacked with the graph-preserving reroutes (left
    curves, then semi-covered edges); if neither applies, its base is deleted
    and an uncrossed edge is added between two non-adjacent vertices of the
    merged face. Vertex and edge counts are preserved.
    """
    if not validate(emb).ok:
        raise LemmaError("input is not a valid embedding")
    if not is_fan_crossing(emb):
        raise LemmaError("input is not fan-crossing")
    s = _Session(emb)
    guard = len(config_ii_instances(emb, check=False)) + 1
    while True:
        insts = config_ii_instances(s.emb, check=False)
        if not insts:
            break
        guard -= 1
        if guard < 0:
            raise RerouteFailure("configuration II did not disappear")
        inst = min(insts, key=lambda i: (s.emb.edges[i.base], i.apex))
        if reroute_first:
            if _conf_attempt(s, "left-curves", inst, lambda: _left_curves(s, inst)):
                continue
            if _conf_attempt(s, "semi-covered", inst, lambda: _semi_covered(s, inst)):
                continue
        snap = s.snapshot()
        try:
            _replace_base(s, inst)
        except LemmaError as err:
            s.restore(snap, f"replace-base on {{{inst.u},{inst.v}}}: {err}")
            raise RerouteFailure(str(err)) from err
        s.trace.lemmas.append({"lemma": "replace-base", "target": [inst.u, inst.v, inst.apex]})
    out = s.emb
    if (out.n, out.m) != (emb.n, emb.m):
        raise RerouteFailure("vertex or edge count changed")
    return out, s.trace
