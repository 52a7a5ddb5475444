"""Named embeddings: the five K5 drawings, three fan-crossing K7 drawings,
the K7 fat-edge gadget and graph M.

Entries are checked-in documents under ``fancross/data``.
"""

from __future__ import annotations

from functools import lru_cache
from importlib import resources
from typing import Any

from fancross.document import loads
from fancross.embedding import Embedding, Planarization

K5_LABELS = ("a", "b", "c", "d", "e")
K7_LABELS = ("a", "b", "c")


def names() -> list[str]:
    out = [f"k5_{x}" for x in K5_LABELS] + [f"k7_{x}" for x in K7_LABELS]
    return out + ["fat_edge", "graph_m"]


@lru_cache(maxsize=None)
def _load(name: str) -> tuple[Embedding, dict[str, Any]]:
    if name == "fat_edge":
        name = "k7_a"
    text = resources.files("fancross").joinpath("data", f"{name}.json").read_text(encoding="utf-8")
    return loads(text)


def entry(name: str) -> Embedding:
    if name not in names():
        raise KeyError(f"unknown catalog entry {name!r}; try one of {', '.join(names())}")
    return _load(name)[0]


def entry_meta(name: str) -> dict[str, Any]:
    entry(name)
    meta = dict(_load(name)[1])
    if name == "fat_edge":
        meta.update(name="fat_edge", note="K7 gadget standing in for a fat edge (same drawing as k7_a)")
    return meta


def k5_embeddings() -> list[Embedding]:
    return [entry(f"k5_{x}") for x in K5_LABELS]


def k7_embeddings() -> list[Embedding]:
    return [entry(f"k7_{x}") for x in K7_LABELS]


def fat_edge() -> Embedding:
    """The K7 used for every fat edge; vertices 0 and 1 are its terminals."""
    return entry("fat_edge")


def graph_m() -> Embedding:
    return entry("graph_m")


def graph_m_labels() -> dict[str, int]:
    """Vertex ids of the named vertices of graph M (t, u, v, x, y, ...)."""
    return dict(entry_meta("graph_m")["labels"])


def graph_m_gadgets() -> list[list[int]]:
    """Vertex sets of the K7 gadgets inside graph M, one per fat edge."""
    return [list(g) for g in entry_meta("graph_m")["gadgets"]]


def fat_edge_connectivity(emb: Embedding) -> bool:
    """Are all real vertices connected once every uncrossed edge is removed?

    Connectivity is measured in the planarization: only segments of
    crossed edges remain, and crossing points act as junctions.
    """
    if emb.n <= 1:
        return True
    pl = Planarization(emb)
    parent = list(range(pl.num_nodes))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for e in range(emb.m):
        if not emb.crossings[e]:
            continue
        pts = [pl.point(e, j) for j in range(len(emb.crossings[e]) + 2)]
        for p, q in zip(pts, pts[1:]):
            parent[find(p)] = find(q)
    root = find(0)
    return all(find(v) == root for v in range(emb.n))
