"""SVG rendering of an embedding's planarization.

The outer face is pinned to a regular polygon and every other node sits at
the (weighted) barycenter of its neighbours. Coordinates are cosmetic.
"""

from __future__ import annotations

import math
from typing import Mapping
from xml.sax.saxutils import escape

import numpy as np

from fancross.embedding import Embedding, Planarization

SIZE = 600.0
MARGIN = 30.0
PALETTE = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b", "#e377c2", "#17becf")


class RenderError(RuntimeError):
    pass


def _outer_cycle(pl: Planarization) -> list[int]:
    seen: list[int] = []
    for d in pl.faces[pl.outer_face]:
        x = pl.origin(d)
        if x not in seen:
            seen.append(x)
    return seen


def layout(emb: Embedding, seed: int = 0, attempts: int = 5) -> dict[int, tuple[float, float]]:
    """Positions of all planarization nodes (vertices, then crossing points)."""
    pl = Planarization(emb)
    count = pl.num_nodes
    if count == 1:
        return {0: (0.5, 0.5)}
    adj: list[list[int]] = [[] for _ in range(count)]
    for e in range(emb.m):
        pts = [pl.point(e, j) for j in range(len(emb.crossings[e]) + 2)]
        for p, q in zip(pts, pts[1:]):
            adj[p].append(q)
            adj[q].append(p)
    ring = _outer_cycle(pl)
    if len(ring) < 3:
        ring = list(range(min(count, 3))) if count >= 3 else ring
    rng = np.random.default_rng(seed)
    for attempt in range(attempts):
        pos = np.zeros((count, 2))
        k = len(ring)
        for i, x in enumerate(ring):
            ang = 2 * math.pi * i / k + math.pi / 2
            pos[x] = (math.cos(ang), math.sin(ang))
        inner = [x for x in range(count) if x not in set(ring)]
        if inner:
            idx = {x: i for i, x in enumerate(inner)}
            a = np.zeros((len(inner), len(inner)))
            b = np.zeros((len(inner), 2))
            for x in inner:
                i = idx[x]
                for y in adj[x]:
                    w = 1.0 if attempt == 0 else float(rng.uniform(0.5, 1.5))
                    a[i, i] += w
                    if y in idx:
                        a[i, idx[y]] -= w
                    else:
                        b[i] += w * pos[y]
                if not adj[x]:
                    a[i, i] = 1.0
            pos[inner] = np.linalg.solve(a, b)
        rounded = {tuple(np.round(p, 6)) for p in pos}
        if len(rounded) == count:
            return {x: (float(pos[x][0]), float(pos[x][1])) for x in range(count)}
    raise RenderError(f"layout has coincident points after {attempts} attempts")


def render_svg(emb: Embedding, labels: Mapping[int, str] | None = None, seed: int = 0) -> str:
    """Straight-line drawing of the planarization as an SVG document."""
    pl = Planarization(emb)
    pos = layout(emb, seed=seed)

    def px(x: int) -> tuple[float, float]:
        u, v = pos[x]
        scale = (SIZE - 2 * MARGIN) / 2
        return MARGIN + (u + 1) * scale, MARGIN + (1 - v) * scale

    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{SIZE:.0f}" height="{SIZE:.0f}" '
        f'viewBox="0 0 {SIZE:.0f} {SIZE:.0f}">',
        '<rect width="100%" height="100%" fill="white"/>',
    ]
    for e in range(emb.m):
        crossed = bool(emb.crossings[e])
        color = PALETTE[e % len(PALETTE)] if crossed else "#444444"
        pts = [pl.point(e, j) for j in range(len(emb.crossings[e]) + 2)]
        for j, (p, q) in enumerate(zip(pts, pts[1:])):
            (x1, y1), (x2, y2) = px(p), px(q)
            out.append(
                f'<line class="segment" data-edge="{e}" data-seg="{j}" x1="{x1:.2f}" y1="{y1:.2f}" '
                f'x2="{x2:.2f}" y2="{y2:.2f}" stroke="{color}" stroke-width="1.5"/>'
            )
    for x in range(emb.n, pl.num_nodes):
        cx, cy = px(x)
        out.append(
            f'<rect class="crossing" x="{cx - 2.5:.2f}" y="{cy - 2.5:.2f}" width="5" height="5" fill="black"/>'
        )
    for v in range(emb.n):
        cx, cy = px(v)
        name = escape(str(labels.get(v, v) if labels else v))
        out.append(f'<circle class="vertex" cx="{cx:.2f}" cy="{cy:.2f}" r="9" fill="#ffffcc" stroke="black"/>')
        out.append(
            f'<text x="{cx:.2f}" y="{cy + 3.5:.2f}" font-size="10" text-anchor="middle" '
            f'font-family="sans-serif">{name}</text>'
        )
    out.append("</svg>")
    return "\n".join(out) + "\n"
