"""Acceptance criteria 1-9, one test each.

Every test records a PASS/FAIL line that is printed in the terminal summary.
Time limits are wall-clock and include loading catalog documents.
"""

from __future__ import annotations

import time

import pytest

from fancross.catalog import (
    entry,
    fat_edge_connectivity,
    graph_m,
    graph_m_labels,
    k5_embeddings,
    k7_embeddings,
    names,
)
from fancross.embedding import validate
from fancross.enumerate import EnumSpec, enumerate_embeddings
from fancross.isomorphism import map_isomorphic
from fancross.patterns import (
    config_ii_instances,
    is_adjacency_crossing,
    is_fan_crossing,
    triangle_crossings_direct,
    triangle_crossings_via_cover,
    verdicts,
)
from fancross.rerouter import _apply_step, fan_planarize, make_fan_crossing

from conftest import ACCEPTANCE, SWEEP

SWEEP_CROSSINGS = 4
LIMIT_1 = 1.0
LIMIT_2 = 1.0
LIMIT_3 = 300.0
LIMIT_5_M = 30.0
LIMIT_7 = 1.0
LIMIT_8 = 5.0

# (criterion, source, input, output, trace) for every rerouter run in 2-5
RUNS: list[tuple[int, str, object, object, object]] = []


def record(k: int, ok: bool, detail: str) -> None:
    ACCEPTANCE[k] = (ok, detail)
    assert ok, f"criterion {k}: {detail}"


@pytest.fixture(scope="module")
def sweep():
    """The deduped embeddings of the sweep graphs, with enumeration time."""
    t0 = time.perf_counter()
    out = []
    for name, graph in SWEEP:
        for emb in enumerate_embeddings(EnumSpec(graph, SWEEP_CROSSINGS, dedupe=True)):
            out.append((name, emb))
    return out, time.perf_counter() - t0


def test_criterion_1_catalog_verdicts():
    t0 = time.perf_counter()
    a, b, c, d, e = (verdicts(x) for x in k5_embeddings())
    ok = (
        a.one_planar and a.fan_crossing_free
        and all(r.fan_planar for r in (b, c, d))
        and e.adjacency_crossing and not e.fan_crossing and len(e.triangles) == 1
    )
    dt = time.perf_counter() - t0
    record(1, ok and dt < LIMIT_1, f"K5 (a)-(e) verdicts {'match' if ok else 'differ'}; {dt:.3f}s < {LIMIT_1}s")


def test_criterion_2_k5_e_to_c():
    t0 = time.perf_counter()
    src = entry("k5_e")
    out, trace = make_fan_crossing(src)
    iso = map_isomorphic(out, entry("k5_c"))
    dt = time.perf_counter() - t0
    RUNS.append((2, "k5_e", src, out, trace))
    record(2, iso and dt < LIMIT_2, f"make_fan_crossing(K5 e) ~ K5 c: {iso}; {dt:.3f}s < {LIMIT_2}s")


def test_criterion_3_sweep(sweep):
    embs, t_enum = sweep
    t0 = time.perf_counter()
    checked, failures = 0, []
    for name, emb in embs:
        if not is_adjacency_crossing(emb):
            continue
        checked += 1
        try:
            out, trace = make_fan_crossing(emb)
        except Exception as err:  # any exception is a failure of the criterion
            failures.append(f"{name}: {err}")
            continue
        RUNS.append((3, name, emb, out, trace))
        if not (validate(out).ok and is_fan_crossing(out) and out.n == emb.n and out.edges == emb.edges):
            failures.append(f"{name}: bad output")
    dt = t_enum + time.perf_counter() - t0
    record(
        3, not failures and dt < LIMIT_3,
        f"{checked} adjacency-crossing embeddings, {len(failures)} failures; {dt:.1f}s < {LIMIT_3:.0f}s",
    )


def test_criterion_4_characterization(sweep):
    embs, _ = sweep
    checked, mismatches = 0, 0
    for _, emb in embs:
        if not is_adjacency_crossing(emb):
            continue
        checked += 1
        direct = triangle_crossings_direct(emb)
        direct_edges = {g for ctx in direct for g in ctx.triangle_crossers}
        if triangle_crossings_via_cover(emb) != direct_edges:
            mismatches += 1
        if is_fan_crossing(emb) != (not direct):
            mismatches += 1
    record(4, mismatches == 0, f"{checked} adjacency-crossing embeddings, {mismatches} mismatches")


def test_criterion_5_fan_planarization(sweep):
    embs, _ = sweep
    cases, failures = 0, []
    for name, emb in embs:
        if not is_fan_crossing(emb) or not config_ii_instances(emb):
            continue
        cases += 1
        out, trace = fan_planarize(emb)
        RUNS.append((5, name, emb, out, trace))
        if not (verdicts(out).fan_planar and (out.n, out.m) == (emb.n, emb.m)):
            failures.append(name)
    t0 = time.perf_counter()
    m = graph_m()
    out, trace = fan_planarize(m)
    dt = time.perf_counter() - t0
    RUNS.append((5, "graph_m", m, out, trace))
    m_ok = verdicts(out).fan_planar and (out.n, out.m) == (m.n, m.m)
    record(
        5, not failures and m_ok and dt < LIMIT_5_M,
        f"{cases} sweep embeddings with configuration II, {len(failures)} failures; "
        f"graph M {'ok' if m_ok else 'FAILED'} in {dt:.2f}s < {LIMIT_5_M:.0f}s",
    )


def test_criterion_6_density(sweep):
    embs, _ = sweep
    checked, violations = 0, []
    pool = [(name, e) for name, e in embs if is_fan_crossing(e)]
    pool += [(name, entry(name)) for name in names()]
    for name, emb in pool:
        if emb.n >= 3:
            checked += 1
            if emb.m > 5 * emb.n - 10:
                violations.append(name)
    k7 = [(e.m, 5 * e.n - 10) for e in k7_embeddings()]
    ok = not violations and all(pair == (21, 25) for pair in k7)
    record(6, ok, f"{checked} embeddings, {len(violations)} violations; K7 {k7[0][0]} <= {k7[0][1]}")


def test_criterion_7_fat_edge_connectivity():
    t0 = time.perf_counter()
    results = [fat_edge_connectivity(e) for e in k7_embeddings()]
    dt = time.perf_counter() - t0
    record(7, all(results) and dt < LIMIT_7, f"K7 (a)-(c): {results}; {dt:.3f}s < {LIMIT_7}s")


def test_criterion_8_graph_m():
    t0 = time.perf_counter()
    m = graph_m()
    lab = graph_m_labels()
    ok = validate(m).ok and is_fan_crossing(m)
    insts = config_ii_instances(m)
    found = False
    for inst in insts:
        if {inst.u, inst.v} != {lab["u"], lab["v"]} or inst.apex != lab["t"]:
            continue
        tx, ty = m.edge_id(lab["t"], lab["x"]), m.edge_id(lab["t"], lab["y"])
        found = {tx, ty} <= set(inst.crossers) and m.sign(inst.base, tx) != m.sign(inst.base, ty)
    dt = time.perf_counter() - t0
    record(
        8, ok and found and dt < LIMIT_8,
        f"valid fan-crossing: {ok}; base {{u,v}} apex t with opposite {{t,x}}, {{t,y}}: {found}; "
        f"{dt:.2f}s < {LIMIT_8}s",
    )


def test_criterion_9_surgery_safety():
    ops, bad, rollbacks = 0, [], 0
    for k, name, src, out, trace in RUNS:
        rollbacks += len(trace.rollbacks)
        emb = src
        for step in trace.steps:
            emb = _apply_step(emb, step)
            ops += 1
            if not validate(emb).ok:
                bad.append(f"criterion {k} {name}: {step.lemma}")
        if emb != out:
            bad.append(f"criterion {k} {name}: replay differs")
    criteria = sorted({k for k, *_ in RUNS})
    ok = criteria == [2, 3, 5] and not bad and rollbacks == 0
    record(9, ok, f"{ops} operations over criteria {criteria}: {len(bad)} invalid, {rollbacks} rollbacks")
