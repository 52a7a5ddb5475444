from __future__ import annotations

import json
from pathlib import Path

import pytest

from fancross.catalog import entry, graph_m, graph_m_labels
from fancross.document import load
from fancross.embedding import validate
from fancross.isomorphism import map_isomorphic
from fancross.patterns import (
    config_ii_instances,
    is_fan_crossing,
    triangle_crossings_direct,
    verdicts,
)
from fancross.rerouter import (
    LemmaError,
    RerouteTrace,
    augment_apex,
    eliminate_bidirectional,
    eliminate_with_side_edge,
    fan_planarize,
    make_fan_crossing,
    reroute_base,
    reroute_left_curves,
    reroute_via_semicovered,
)

DATA = Path(__file__).parent / "data"


def fixture(name):
    return load(DATA / f"{name}.json")


def _same_graph(a, b):
    return a.n == b.n and a.edges == b.edges


def test_k5_e_becomes_k5_c():
    out, trace = make_fan_crossing(entry("k5_e"))
    assert validate(out).ok and is_fan_crossing(out)
    assert map_isomorphic(out, entry("k5_c"))
    assert trace.rollbacks == []
    assert trace.lemma_names() == ["base@u"]


def test_trace_replays_and_round_trips():
    src = entry("k5_e")
    out, trace = make_fan_crossing(src)
    assert trace.replay(src) == out
    again = RerouteTrace.from_dict(json.loads(trace.to_json()))
    assert again.to_dict() == trace.to_dict()
    assert again.replay(src) == out
    step = trace.steps[0]
    assert step.delta == len(step.new) - len(step.old)


def test_fan_crossing_input_is_untouched():
    for name in ("k5_a", "k5_b", "k5_c", "k5_d", "k7_a"):
        emb = entry(name)
        out, trace = make_fan_crossing(emb)
        assert out == emb and trace.steps == []


def test_idempotent():
    once, _ = make_fan_crossing(entry("k5_e"))
    twice, trace = make_fan_crossing(once)
    assert twice == once and not trace.steps


def test_rejects_independent_crossing():
    from fancross.drawing import from_drawing

    pts = [(0, 0), (10, 0), (3, 3), (3, -3), (7, 3), (7, -3)]
    emb = from_drawing(pts, [(0, 1), (2, 3), (4, 5), (0, 2), (2, 4), (1, 5)])
    with pytest.raises(LemmaError):
        make_fan_crossing(emb)


def test_bidirectional(bidirectional):
    (ctx,) = triangle_crossings_direct(bidirectional)
    out = eliminate_bidirectional(bidirectional, ctx)
    assert validate(out).ok and _same_graph(out, bidirectional)
    ac = out.edge_id(0, 2)
    assert out.crossers(3) == [ac] and out.crossers(4) == [ac]
    assert not triangle_crossings_direct(out)
    _, trace = make_fan_crossing(bidirectional)
    assert trace.lemma_names() == ["bidirectional"]


def test_bidirectional_with_needles(bidirectional_needles):
    out, trace = make_fan_crossing(bidirectional_needles)
    assert is_fan_crossing(out) and _same_graph(out, bidirectional_needles)
    assert trace.lemma_names() == ["bidirectional"] and trace.rollbacks == []


def test_bidirectional_needs_both_directions():
    emb = entry("k5_e")
    (ctx,) = triangle_crossings_direct(emb)
    with pytest.raises(LemmaError):
        eliminate_bidirectional(emb, ctx)


@pytest.mark.parametrize(
    "name,lemma",
    [("lemma_side_edge_u", eliminate_with_side_edge), ("lemma_side_edge_v", eliminate_with_side_edge),
     ("lemma_base_u", reroute_base)],
)
def test_triangle_lemmas_on_sweep_fixtures(name, lemma):
    emb, _ = fixture(name)
    for ctx in triangle_crossings_direct(emb):
        out = lemma(emb, ctx)
        assert validate(out).ok and _same_graph(out, emb)
        assert ctx.key not in {c.key for c in triangle_crossings_direct(out)}


@pytest.mark.parametrize("name", sorted(p.stem for p in DATA.glob("*.json")))
def test_make_fan_crossing_on_sweep_fixtures(name):
    emb, meta = fixture(name)
    out, trace = make_fan_crossing(emb)
    assert validate(out).ok and is_fan_crossing(out) and _same_graph(out, emb)
    assert trace.lemma_names() == meta["lemmas"]
    assert trace.rollbacks == []
    assert trace.replay(emb) == out


def test_fixture_classes_are_present():
    for name in ("class_a_arrow", "class_a_sickle", "class_c_arrow", "class_c_hook"):
        emb, _ = fixture(name)
        want = name.removeprefix("class_").replace("_", "-")
        assert any(want in {c.value for c in ctx.classes.values()} for ctx in triangle_crossings_direct(emb))


# -- configuration II ---------------------------------------------------------


def _only_instance(emb):
    (inst,) = config_ii_instances(emb)
    return inst


@pytest.mark.parametrize("name", ["conf_left", "conf_three_sided"])
def test_left_curves(name, request):
    emb = request.getfixturevalue(name)
    out = reroute_left_curves(emb, _only_instance(emb))
    assert validate(out).ok and is_fan_crossing(out) and _same_graph(out, emb)
    assert config_ii_instances(out) == []


@pytest.mark.parametrize("name", ["conf_semi_straight", "conf_semi_curve"])
def test_semi_covered(name, request):
    emb = request.getfixturevalue(name)
    inst = _only_instance(emb)
    assert any(inst.semi_covered.values())
    out = reroute_via_semicovered(emb, inst)
    assert validate(out).ok and is_fan_crossing(out) and _same_graph(out, emb)
    assert config_ii_instances(out) == []


def test_semi_covered_needs_a_semi_covered_edge(conf_left):
    inst = _only_instance(conf_left)
    assert not any(inst.semi_covered.values())
    with pytest.raises(LemmaError):
        reroute_via_semicovered(conf_left, inst)


def test_fan_planarize_prefers_graph_preserving_reroutes(conf_left, conf_semi_straight):
    for emb, lemma in [(conf_left, "left-curves"), (conf_semi_straight, "semi-covered")]:
        out, trace = fan_planarize(emb)
        assert trace.lemma_names() == [lemma]
        assert _same_graph(out, emb) and verdicts(out).fan_planar


def test_augment_apex(conf_missing_tu):
    inst = _only_instance(conf_missing_tu)
    out = augment_apex(conf_missing_tu, inst)
    assert validate(out).ok and out.m == conf_missing_tu.m + 1
    tu = out.edge_id(inst.apex, inst.u)
    assert tu is not None and out.crossings[tu] == ()


def test_augment_apex_is_identity_on_m():
    emb = graph_m()
    assert augment_apex(emb, _only_instance(emb)) == emb


def test_replace_base_keeps_counts(conf_left):
    out, trace = fan_planarize(conf_left, reroute_first=False)
    assert trace.lemma_names() == ["replace-base"]
    assert (out.n, out.m) == (conf_left.n, conf_left.m)
    # both rotation neighbours are the apex, so the co-facial fallback
    # redraws the base itself, now uncrossed
    assert out.crossings[out.edge_id(0, 1)] == ()
    assert any("co-facial" in note for note in trace.notes)
    assert validate(out).ok and verdicts(out).fan_planar


def test_fan_planarize_graph_m():
    emb = graph_m()
    lab = graph_m_labels()
    out, trace = fan_planarize(emb)
    assert (out.n, out.m) == (emb.n, emb.m)
    assert validate(out).ok and verdicts(out).fan_planar
    assert trace.rollbacks == []
    assert trace.replay(emb) == out
    # the base {u, v} is the edge given up
    assert out.edge_id(lab["u"], lab["v"]) is None


def test_fan_planarize_rejects_non_fan_crossing():
    with pytest.raises(LemmaError):
        fan_planarize(entry("k5_e"))
