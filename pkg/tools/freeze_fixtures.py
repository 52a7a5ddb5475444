"""Pick small sweep embeddings exercising each triangle lemma and class.

Writes tests/data/*.json; rerun after changing the enumerator or the
classifier and review the diff.
"""

from __future__ import annotations

import sys
from pathlib import Path

from fancross.document import save
from fancross.embedding import Graph
from fancross.enumerate import EnumSpec, enumerate_embeddings
from fancross.patterns import is_fan_crossing, triangle_crossings_direct
from fancross.rerouter import make_fan_crossing

K5 = Graph.from_edges(5, [(i, j) for i in range(5) for j in range(i + 1, 5)])
W4 = Graph.from_edges(5, [(0, 1), (1, 2), (2, 3), (0, 3), (0, 4), (1, 4), (2, 4), (3, 4)])
P3 = Graph.from_edges(6, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5), (0, 3), (1, 4), (2, 5)])
SUITE = [("K5", K5, 5), ("W4", W4, 6), ("P3", P3, 6)]

WANTED = {
    "lemma_base_u": ("lemma", "base@u"),
    "lemma_side_edge_u": ("lemma", "side-edge@u"),
    "lemma_side_edge_v": ("lemma", "side-edge@v"),
    "class_a_arrow": ("class", "a-arrow"),
    "class_a_sickle": ("class", "a-sickle"),
    "class_c_arrow": ("class", "c-arrow"),
    "class_c_hook": ("class", "c-hook"),
}


def main(out: Path) -> None:
    best: dict = {}
    for gname, graph, k in SUITE:
        spec = EnumSpec(graph, k, dedupe=True, filter="adjacency-crossing", ceiling=10**12)
        for emb in enumerate_embeddings(spec):
            if is_fan_crossing(emb):
                continue
            ctxs = triangle_crossings_direct(emb)
            _, trace = make_fan_crossing(emb)
            keys = [("lemma", name) for name in trace.lemma_names()]
            keys += [("class", c.value) for ctx in ctxs for c in ctx.classes.values()]
            score = (emb.crossing_count(), len(ctxs))
            for key in keys:
                if key not in best or score < best[key][0]:
                    best[key] = (score, emb, gname, trace.lemma_names())
    out.mkdir(parents=True, exist_ok=True)
    for fname, key in WANTED.items():
        _, emb, gname, lemmas = best[key]
        save(out / f"{fname}.json", emb, {"graph": gname, "lemmas": lemmas})
        print(fname, gname, emb.crossing_count(), lemmas)


if __name__ == "__main__":
    main(Path(sys.argv[1]) if len(sys.argv) > 1 else Path(__file__).resolve().parents[1] / "tests" / "data")
