"""Exhaustive enumeration of simple topological embeddings of small graphs.

The main enumerator builds embeddings edge by edge. Edges are inserted in
an order that keeps every prefix connected; each new edge is drawn along
every walk through the faces of the current planarization that crosses no
edge twice and no adjacent edge. Deleting the last edge of any embedding
leaves a valid embedding of the prefix, so every embedding is reached, and
it is reached exactly once. Embeddings are spherical: the outer dart is fixed
to the first segment of edge 0.

:func:`brute_force_embeddings` is an independent generate-and-test oracle
(crossing pairs, orders, signs, rotations, then validation) for tiny graphs.
"""

from __future__ import annotations

import itertools
import math
import os
from dataclasses import dataclass
from typing import Callable, Iterator, Sequence

from fancross.embedding import (
    Crossing,
    Dart,
    Embedding,
    Graph,
    Planarization,
    relabel,
    renumber_edges,
    validate,
)
from fancross.isomorphism import canonical_code
from fancross.patterns import (
    config_ii_instances,
    is_adjacency_crossing,
    is_fan_crossing,
    is_fan_crossing_free,
    is_one_planar,
)
from fancross.surgery import SurgeryError, apply_route, walks

DEFAULT_CEILING = 10**8


class InfeasibleSpec(ValueError):
    pass


def _fan_planar(emb: Embedding) -> bool:
    return is_adjacency_crossing(emb) and not config_ii_instances(emb, check=False)


# Every filter is closed under edge deletion, so it also prunes partial embeddings.
FILTERS: dict[str, Callable[[Embedding], bool]] = {
    "planar": lambda e: e.crossing_count() == 0,
    "one-planar": is_one_planar,
    "fan-crossing-free": is_fan_crossing_free,
    "adjacency-crossing": is_adjacency_crossing,
    "fan-crossing": is_fan_crossing,
    "fan-planar": _fan_planar,
}


@dataclass(frozen=True)
class EnumSpec:
    graph: Graph
    max_crossings: int
    dedupe: bool = False
    filter: str | None = None
    ceiling: int | None = None


def nonadjacent_pairs(graph: Graph) -> int:
    m = graph.m
    deg = [0] * graph.n
    for a, b in graph.edges:
        deg[a] += 1
        deg[b] += 1
    adjacent = sum(d * (d - 1) // 2 for d in deg)
    return m * (m - 1) // 2 - adjacent


def raw_space(graph: Graph, max_crossings: int) -> int:
    """Size of the naive candidate space: sum over j <= k of C(p, j) * 2^j * j!.

    ``p`` is the number of non-adjacent edge pairs. Each term counts the
    crossing-pair sets of size ``j`` with a sign per crossing and an upper
    bound on the orders along the edges.
    """
    p = nonadjacent_pairs(graph)
    return sum(math.comb(p, j) * 2**j * math.factorial(j) for j in range(min(p, max_crossings) + 1))


def ceiling_from_env() -> int:
    raw = os.environ.get("FANCROSS_ENUM_CEILING")
    if raw is None:
        return DEFAULT_CEILING
    return int(float(raw))


def check_feasible(spec: EnumSpec) -> None:
    ceiling = spec.ceiling if spec.ceiling is not None else ceiling_from_env()
    size = raw_space(spec.graph, spec.max_crossings)
    if size > ceiling:
        raise InfeasibleSpec(f"search space {size} exceeds the ceiling {ceiling}")


def _connected(graph: Graph) -> bool:
    if graph.n == 0:
        return True
    adj = [[] for _ in range(graph.n)]
    for a, b in graph.edges:
        adj[a].append(b)
        adj[b].append(a)
    seen = {0}
    stack = [0]
    while stack:
        x = stack.pop()
        for y in adj[x]:
            if y not in seen:
                seen.add(y)
                stack.append(y)
    return len(seen) == graph.n


def insertion_order(graph: Graph) -> list[int]:
    """Edge ids such that every prefix spans a connected graph."""
    if not graph.edges:
        return []
    placed = set(graph.edges[0])
    order = [0]
    rest = list(range(1, graph.m))
    while rest:
        pick = next((e for e in rest if set(graph.edges[e]) <= placed), None)
        if pick is None:
            pick = next(e for e in rest if set(graph.edges[e]) & placed)
        rest.remove(pick)
        order.append(pick)
        placed |= set(graph.edges[pick])
    return order


def canonical_rotations(emb: Embedding) -> Embedding:
    rot = []
    for r in emb.rotations:
        if r:
            i = r.index(min(r))
            r = r[i:] + r[:i]
        rot.append(tuple(r))
    outer = Dart(0, 0, False) if emb.edges else None
    return Embedding(emb.graph, emb.crossings, tuple(rot), outer)


def _grow(
    emb: Embedding,
    todo: Sequence[tuple[int, int]],
    max_crossings: int,
    keep: Callable[[Embedding], bool] | None,
) -> Iterator[Embedding]:
    """Insert the edges ``todo`` (working vertex ids; id ``emb.n`` is a new vertex)."""
    if not todo:
        yield emb
        return
    (x, y), rest = todo[0], todo[1:]
    pl = Planarization(emb)
    budget = max_crossings - emb.crossing_count()
    if y >= emb.n:
        grown = Embedding(
            Graph(emb.n + 1, emb.edges), emb.crossings, emb.rotations + ((),), emb.outer
        )
        for s_after, path, _face in walks(pl, x, None, budget):
            try:
                nxt = apply_route(grown, emb.m, x, path, s_after, -1, endpoints=(x, y))
            except SurgeryError:
                continue
            if keep is None or keep(nxt):
                yield from _grow(nxt, rest, max_crossings, keep)
    else:
        for s_after, path, e_after in walks(pl, x, y, budget):
            try:
                nxt = apply_route(emb, emb.m, x, path, s_after, e_after, endpoints=(x, y))
            except SurgeryError:
                continue
            if keep is None or keep(nxt):
                yield from _grow(nxt, rest, max_crossings, keep)


def _plan(graph: Graph) -> tuple[list[int], list[int], list[tuple[int, int]]]:
    """Insertion order, vertex placement order and edges in working ids."""
    order = insertion_order(graph)
    work_id: dict[int, int] = {}
    placement: list[int] = []
    todo = []
    for e in order:
        a, b = graph.edges[e]
        if not work_id:
            for v in (a, b):
                work_id[v] = len(placement)
                placement.append(v)
        if a not in work_id:
            a, b = b, a
        x = work_id[a]
        if b not in work_id:
            work_id[b] = len(placement)
            placement.append(b)
        todo.append((x, work_id[b]))
    return order, placement, todo


def _finish(emb: Embedding, order: list[int], placement: list[int]) -> Embedding:
    out = relabel(emb, placement)
    inv = [0] * len(order)
    for new_pos, old in enumerate(order):
        inv[old] = new_pos
    out = renumber_edges(out, inv)
    return canonical_rotations(out)


def _labeled(spec: EnumSpec, keep) -> Iterator[Embedding]:
    graph = spec.graph
    if not _connected(graph):
        raise InfeasibleSpec("graph must be connected")
    if graph.m == 0:
        if graph.n == 1:
            yield Embedding(graph, (), ((),), None)
        return
    order, placement, todo = _plan(graph)
    first = Embedding(Graph(2, ((0, 1),)), ((),), ((0,), (0,)), Dart(0, 0, False))
    seen = set()
    for emb in _grow(first, todo[1:], spec.max_crossings, keep):
        out = _finish(emb, order, placement)
        key = (out.crossings, out.rotations)
        if key in seen:
            continue
        seen.add(key)
        yield out


def enumerate_embeddings(spec: EnumSpec) -> Iterator[Embedding]:
    """Every valid embedding of ``spec.graph`` with at most ``max_crossings`` crossings."""
    check_feasible(spec)
    keep = FILTERS[spec.filter] if spec.filter else None
    stream = _labeled(spec, keep)
    if not spec.dedupe:
        yield from stream
        return
    codes = set()
    for emb in stream:
        code = canonical_code(emb)
        if code in codes:
            continue
        codes.add(code)
        yield emb


def find_embedding(spec: EnumSpec, predicate: Callable[[Embedding], bool]) -> Embedding | None:
    for emb in enumerate_embeddings(spec):
        if predicate(emb):
            return emb
    return None


def extend_embedding(
    emb: Embedding,
    new_edges: Sequence[tuple[int, int]],
    max_crossings: int,
    keep: Callable[[Embedding], bool] | None = None,
) -> Iterator[Embedding]:
    """Drawings of ``emb`` plus ``new_edges`` that keep ``emb`` as drawn.

    Edges may introduce new vertices with ids ``emb.n, emb.n + 1, ...`` in
    order of first appearance; each such edge must have one placed endpoint.
    """
    todo = []
    n = emb.n
    for a, b in new_edges:
        if a >= n and b >= n:
            raise ValueError("a new edge needs one placed endpoint")
        if a >= n:
            a, b = b, a
        if b >= n:
            if b != n:
                raise ValueError("new vertices must appear in increasing order")
            n += 1
        todo.append((a, b))
    yield from _grow(emb, todo, max_crossings, keep)


# ---------------------------------------------------------------------------
# Generate-and-test oracle
# ---------------------------------------------------------------------------


def brute_force_embeddings(graph: Graph, max_crossings: int) -> Iterator[Embedding]:
    """Generate-and-test: crossing pairs, orders, signs and rotations, then validate."""
    m = graph.m
    pairs = [
        (e, f) for e, f in itertools.combinations(range(m), 2) if not graph.adjacent(e, f)
    ]
    rot_choices = []
    for v in range(graph.n):
        inc = graph.incident(v)
        if len(inc) <= 2:
            rot_choices.append([tuple(inc)])
        else:
            first, rest = inc[0], inc[1:]
            rot_choices.append([(first,) + p for p in itertools.permutations(rest)])
    seen = set()
    for j in range(min(max_crossings, len(pairs)) + 1):
        for chosen in itertools.combinations(pairs, j):
            crossing_of = [[] for _ in range(m)]
            for e, f in chosen:
                crossing_of[e].append(f)
                crossing_of[f].append(e)
            order_choices = [list(itertools.permutations(lst)) for lst in crossing_of]
            for orders in itertools.product(*order_choices):
                for signs in itertools.product("LR", repeat=j):
                    sign_of = {}
                    for (e, f), s in zip(chosen, signs):
                        sign_of[(e, f)] = "LR" if s == "L" else "RL"
                        sign_of[(f, e)] = "RL" if s == "L" else "LR"
                    crossings = tuple(
                        tuple(Crossing(o, sign_of[(e, o)]) for o in orders[e]) for e in range(m)
                    )
                    for rots in itertools.product(*rot_choices):
                        emb = Embedding(graph, crossings, tuple(rots), Dart(0, 0, False))
                        if validate(emb).ok:
                            emb = canonical_rotations(emb)
                            key = (emb.crossings, emb.rotations)
                            if key not in seen:
                                seen.add(key)
                                yield emb
