from __future__ import annotations

import json

import pytest

from fancross.catalog import entry, entry_meta, names
from fancross.document import DocumentError, FORMAT, dumps, loads, to_dict


@pytest.mark.parametrize("name", names())
def test_round_trip_is_exact(name):
    text = dumps(entry(name), entry_meta(name))
    emb, meta = loads(text)
    assert emb == entry(name)
    assert dumps(emb, meta) == text


def test_checked_in_documents_are_canonical():
    from importlib import resources

    for name in names():
        if name == "fat_edge":
            continue
        text = resources.files("fancross").joinpath("data", f"{name}.json").read_text()
        emb, meta = loads(text)
        assert dumps(emb, meta) == text


def test_syntax_error_reports_line():
    with pytest.raises(DocumentError, match=r"line 3, column"):
        loads('{\n  "format": "fancross-embedding/1",\n  "n": ,\n}')


def _doc():
    return to_dict(entry("k5_a"))


def test_bad_sign_names_field():
    doc = _doc()
    doc["crossings"][doc["crossings"].index(next(c for c in doc["crossings"] if c))][0]["sign"] = "XX"
    with pytest.raises(DocumentError, match=r"crossings\[\d+\]\[0\]\.sign"):
        loads(json.dumps(doc))


def test_vertex_out_of_range_names_edge():
    doc = _doc()
    doc["edges"][3] = [0, 9]
    with pytest.raises(DocumentError, match=r"edges\[3\]"):
        loads(json.dumps(doc))


def test_wrong_format_tag():
    doc = _doc()
    doc["format"] = "other/1"
    with pytest.raises(DocumentError, match="format"):
        loads(json.dumps(doc))
    assert _doc()["format"] == FORMAT


def test_missing_field():
    doc = _doc()
    del doc["rotations"]
    with pytest.raises(DocumentError, match="rotations: missing"):
        loads(json.dumps(doc))
