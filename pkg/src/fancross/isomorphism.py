"""Map isomorphism of embeddings via canonical codes of the planarization.

Two embeddings are isomorphic when some bijection of their planarizations
maps vertices to vertices, crossing points to crossing points and preserves
every rotation, either all as given or all reversed. The outer face is not
part of the comparison: embeddings live on the sphere.
"""

from __future__ import annotations

from collections import deque
from typing import Sequence

from fancross.embedding import Dart, Embedding, Planarization

Code = tuple


def _code_from(pl: Planarization, start: Dart, reverse: bool, best: Code | None) -> Code | None:
    """BFS code of the map rooted at ``start``; ``None`` once it exceeds ``best``."""
    n = pl.emb.n
    number: dict[int, int] = {}
    ref: list[Dart] = []
    x0 = pl.origin(start)
    number[x0] = 0
    ref.append(start)
    queue = deque([x0])
    out: list = []
    pos = 0
    while queue:
        x = queue.popleft()
        darts = pl.rot[x]
        k = len(darts)
        i0 = pl.index[ref[number[x]]]
        row = [0 if x < n else 1, k]
        for step in range(k):
            d = darts[(i0 - step) % k] if reverse else darts[(i0 + step) % k]
            y = pl.target(d)
            if y not in number:
                number[y] = len(ref)
                ref.append(d.twin)
                queue.append(y)
            row.append(number[y])
        for item in row:
            if best is not None and pos < len(best):
                if item > best[pos]:
                    return None
                if item < best[pos]:
                    best = None
            out.append(item)
            pos += 1
    return tuple(out)


def canonical_code(emb: Embedding, reflections: bool = True) -> Code:
    """Smallest rooted code over all root darts (and both orientations)."""
    pl = Planarization(emb)
    darts = pl.all_darts()
    if not darts:
        return (emb.n,)
    best: Code | None = None
    n = emb.n
    # roots at real vertices only: every map with an edge has one
    roots = [d for d in darts if pl.origin(d) < n]
    for d in roots:
        for rev in ((False, True) if reflections else (False,)):
            c = _code_from(pl, d, rev, best)
            if c is not None and (best is None or c < best):
                best = c
    return (emb.n, emb.m) + best


def map_isomorphic(a: Embedding, b: Embedding, reflections: bool = True) -> bool:
    if (a.n, a.m, a.crossing_count()) != (b.n, b.m, b.crossing_count()):
        return False
    return canonical_code(a, reflections) == canonical_code(b, reflections)


def vertex_bijection(a: Embedding, b: Embedding) -> list[int] | None:
    """A vertex map ``a -> b`` realizing a map isomorphism, if one exists."""
    pa, pb = Planarization(a), Planarization(b)
    target = None
    for d in pb.all_darts():
        if pb.origin(d) < b.n:
            target = d
            break
    if target is None:
        return list(range(a.n)) if a.n == b.n == 1 else None
    for d in pa.all_darts():
        if pa.origin(d) >= a.n:
            continue
        for rev in (False, True):
            m = _match(pa, d, pb, target, rev)
            if m is not None:
                return [m[v] for v in range(a.n)]
    return None


def _match(pa: Planarization, da: Dart, pb: Planarization, db: Dart, rev: bool) -> dict[int, int] | None:
    na, nb = pa.emb.n, pb.emb.n
    nodes: dict[int, int] = {pa.origin(da): pb.origin(db)}
    refs = {pa.origin(da): (da, db)}
    queue = deque([pa.origin(da)])
    used = {pb.origin(db)}
    while queue:
        x = queue.popleft()
        y = nodes[x]
        ra, rb = pa.rot[x], pb.rot[y]
        if len(ra) != len(rb) or (x < na) != (y < nb):
            return None
        d, e = refs[x]
        ia, ib = pa.index[d], pb.index[e]
        k = len(ra)
        for s in range(k):
            dx = ra[(ia + s) % k]
            ey = rb[(ib - s) % k] if rev else rb[(ib + s) % k]
            tx, ty = pa.target(dx), pb.target(ey)
            if tx in nodes:
                if nodes[tx] != ty:
                    return None
            else:
                if ty in used:
                    return None
                nodes[tx] = ty
                used.add(ty)
                refs[tx] = (dx.twin, ey.twin)
                queue.append(tx)
    if len(nodes) != pa.num_nodes:
        return None
    return nodes


def isomorphic_up_to(emb: Embedding, catalog: Sequence[Embedding]) -> int | None:
    """Index of the first catalog entry isomorphic to ``emb``."""
    code = canonical_code(emb)
    for i, c in enumerate(catalog):
        if canonical_code(c) == code:
            return i
    return None
