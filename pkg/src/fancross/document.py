"""JSON documents for embeddings (format ``fancross-embedding/1``).

A canonical document is what :func:`dumps` writes; ``dumps(loads(text))``
returns ``text`` unchanged for every canonical document.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Any

from fancross.embedding import LR, RL, Crossing, Dart, Embedding, Graph

FORMAT = "fancross-embedding/1"


class DocumentError(ValueError):
    pass


def to_dict(emb: Embedding, meta: dict[str, Any] | None = None) -> dict[str, Any]:
    doc: dict[str, Any] = {"format": FORMAT}
    if meta:
        doc["meta"] = meta
    doc["n"] = emb.n
    doc["edges"] = [list(e) for e in emb.edges]
    doc["crossings"] = [[{"other": c.other, "sign": c.sign} for c in lst] for lst in emb.crossings]
    doc["rotations"] = [list(r) for r in emb.rotations]
    if emb.outer is not None:
        doc["outer"] = {
            "edge": emb.outer.edge,
            "segment": emb.outer.seg,
            "dir": "rev" if emb.outer.rev else "fwd",
        }
    return doc


def dumps(emb: Embedding, meta: dict[str, Any] | None = None) -> str:
    """Canonical text: one top-level field per line, compact values."""
    doc = to_dict(emb, meta)
    lines = []
    for key, value in doc.items():
        if key in ("edges", "crossings", "rotations") and value:
            inner = ",\n    ".join(json.dumps(v, separators=(", ", ": ")) for v in value)
            lines.append(f'  "{key}": [\n    {inner}\n  ]')
        else:
            text = json.dumps(value, separators=(", ", ": "), sort_keys=key == "meta")
            lines.append(f'  "{key}": {text}')
    return "{\n" + ",\n".join(lines) + "\n}\n"


def _need(cond: bool, where: str, msg: str) -> None:
    if not cond:
        raise DocumentError(f"{where}: {msg}")


def _int(value: Any, where: str) -> int:
    _need(isinstance(value, int) and not isinstance(value, bool), where, f"expected an integer, got {value!r}")
    return value


def from_dict(doc: Any) -> tuple[Embedding, dict[str, Any]]:
    _need(isinstance(doc, dict), "document", "expected a JSON object")
    _need(doc.get("format") == FORMAT, "format", f"expected {FORMAT!r}, got {doc.get('format')!r}")
    for key in ("n", "edges", "crossings", "rotations"):
        _need(key in doc, key, "missing field")
    n = _int(doc["n"], "n")
    _need(n >= 0, "n", "must be non-negative")
    edges_raw = doc["edges"]
    _need(isinstance(edges_raw, list), "edges", "expected an array")
    edges = []
    for i, e in enumerate(edges_raw):
        where = f"edges[{i}]"
        _need(isinstance(e, list) and len(e) == 2, where, "expected a pair [u, v]")
        u, v = _int(e[0], where), _int(e[1], where)
        _need(0 <= u < n and 0 <= v < n, where, f"vertex out of range 0..{n - 1}")
        _need(u != v, where, "self-loop")
        edges.append((u, v))
    m = len(edges)
    cr_raw = doc["crossings"]
    _need(isinstance(cr_raw, list) and len(cr_raw) == m, "crossings", f"expected {m} lists")
    crossings = []
    for i, lst in enumerate(cr_raw):
        _need(isinstance(lst, list), f"crossings[{i}]", "expected an array")
        row = []
        for j, c in enumerate(lst):
            where = f"crossings[{i}][{j}]"
            _need(isinstance(c, dict), where, "expected an object")
            other = _int(c.get("other"), f"{where}.other")
            _need(0 <= other < m, f"{where}.other", f"edge id out of range 0..{m - 1}")
            _need(c.get("sign") in (LR, RL), f"{where}.sign", f"expected 'LR' or 'RL', got {c.get('sign')!r}")
            row.append(Crossing(other, c["sign"]))
        crossings.append(tuple(row))
    rot_raw = doc["rotations"]
    _need(isinstance(rot_raw, list) and len(rot_raw) == n, "rotations", f"expected {n} lists")
    rotations = []
    for v, r in enumerate(rot_raw):
        _need(isinstance(r, list), f"rotations[{v}]", "expected an array")
        rotations.append(tuple(_int(e, f"rotations[{v}]") for e in r))
    outer = None
    if "outer" in doc:
        o = doc["outer"]
        _need(isinstance(o, dict), "outer", "expected an object")
        edge = _int(o.get("edge"), "outer.edge")
        seg = _int(o.get("segment"), "outer.segment")
        _need(o.get("dir") in ("fwd", "rev"), "outer.dir", "expected 'fwd' or 'rev'")
        _need(0 <= edge < m, "outer.edge", "edge id out of range")
        outer = Dart(edge, seg, o["dir"] == "rev")
    meta = doc.get("meta", {})
    _need(isinstance(meta, dict), "meta", "expected an object")
    return Embedding(Graph(n, tuple(edges)), tuple(crossings), tuple(rotations), outer), meta


def loads(text: str) -> tuple[Embedding, dict[str, Any]]:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as err:
        raise DocumentError(f"line {err.lineno}, column {err.colno}: {err.msg}") from err
    return from_dict(doc)


def load(path: str | Path) -> tuple[Embedding, dict[str, Any]]:
    return loads(Path(path).read_text(encoding="utf-8"))


def save(path: str | Path, emb: Embedding, meta: dict[str, Any] | None = None) -> None:
    Path(path).write_text(dumps(emb, meta), encoding="utf-8")
