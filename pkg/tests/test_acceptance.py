"""One test per acceptance criterion; each prints a single PASS/FAIL line."""
import json
import time

import pytest

from pushcurve import geom
from pushcurve.cli import main
from pushcurve.curves import SimpleUpTo, intersection_number, is_simple
from pushcurve.group import GroupWord
from pushcurve.pushing import (
    ConsistentLong,
    Violation,
    asymptotic_ratio,
    bfs_distance,
    build_level_frame,
    certify_path,
    exact_distance_remark,
    frame_report,
    lemma31_check,
    lemma32_check,
    lemma33_check,
    level_of,
    orbit_vertex,
    upper_bound_walk,
)
from pushcurve.regions import adjacent, configuration

from instances import lemma_instances, negative_controls

# pinned budgets (seconds)
GROUP_BUDGET = 1.0
SIMPLICITY_BUDGET = 60.0
WALK_BUDGET = 300.0
LEMMA_BUDGET = 600.0
BFS_BUDGET = 1800.0
# pinned caps
RELATOR_BITS = 256
FRAME_BITS = 1024
BFS_WORD_CAP = 3  # must stay <= 8
LEMMA_INSTANCES = 200


@pytest.fixture
def verdict(capsys):
    def emit(n, ok, what):
        with capsys.disabled():
            print(f"\n{'PASS' if ok else 'FAIL'} criterion {n}: {what}")
        assert ok, what
    return emit


def test_criterion_1_group_validation(G, GP, verdict):
    t0 = time.perf_counter()
    old = geom.precision_cap()
    geom.set_precision_cap(RELATOR_BITS)
    try:
        identity = geom.contains_identity(G.matrix(G.relator))
        bits = geom.last_certified_bits()
    finally:
        geom.set_precision_cap(old)
    kinds = [geom.classify(G.matrix(GroupWord((x,)))) for x in G.gens]
    parabolic = geom.classify(GP.matrix(GP.relator)) is geom.Kind.Parabolic
    dt = time.perf_counter() - t0
    ok = identity and bits <= RELATOR_BITS and len(kinds) == 8 and \
        all(k is geom.Kind.Hyperbolic for k in kinds) and parabolic and dt < GROUP_BUDGET
    verdict(1, ok, f"relator ~ identity at {bits} bits, 8 hyperbolic generators, "
                   f"punctured relator parabolic, {dt:.2f}s")


def test_criterion_2_simplicity_and_intersection(G, curve, verdict):
    t0 = time.perf_counter()
    simple = is_simple(curve("a1"), G, 4)
    r0 = intersection_number(curve("a1"), curve("a2"), G, 4)
    r1 = intersection_number(curve("a1"), curve("b1"), G, 4)
    dt = time.perf_counter() - t0
    ok = simple == SimpleUpTo(4) and r0.count == 0 and r0.exact and \
        r1.count == 1 and r1.exact and dt < SIMPLICITY_BUDGET
    verdict(2, ok, f"a1 {simple}, i(a1,a2)={r0.count}, i(a1,b1)={r1.count} "
                   f"(by depth {r1.counts_by_depth}), {dt:.1f}s")


def test_criterion_3_upper_bound_walk(pm, base_i1, verdict):
    t0 = time.perf_counter()
    rep = upper_bound_walk(pm, base_i1, kmax=5)
    # independent replay: every orbit step up to f^10 is a region adjacency
    steps = [adjacent(orbit_vertex(pm, base_i1.vertex, j).region,
                      orbit_vertex(pm, base_i1.vertex, j + 1).region) for j in range(10)]
    ratios = [row["upper"] / (2 * row["k"]) for row in rep.details["rows"]]
    dt = time.perf_counter() - t0
    ok = rep.ok and rep.details["d_u_fu"] == 1 and rep.details["d_u_f2u"] == 2 and \
        all(steps) and len(ratios) == 5 and all(r <= 1 for r in ratios) and dt < WALK_BUDGET
    verdict(3, ok, f"d(u,fu)={rep.details['d_u_fu']}, d(u,f^2u)={rep.details['d_u_f2u']}, "
                   f"ratios k=1..5 {ratios}, {dt:.1f}s")


def test_criterion_4_level_frames(pm, frame_i1, frame_i2, verdict):
    old = geom.precision_cap()
    geom.set_precision_cap(FRAME_BITS)
    try:
        reps = {"i1": frame_report(frame_i1), "i2": frame_report(frame_i2)}
    finally:
        geom.set_precision_cap(old)
    names = {mode: [h for h, _ in rep.hypotheses] for mode, rep in reps.items()}
    failed = {mode: [h for h, v in rep.hypotheses if not v] for mode, rep in reps.items()}
    ok = frame_i1.m == frame_i2.m == 6 and all(r.ok for r in reps.values()) and \
        len(names["i1"]) > 0 and len(names["i2"]) > 0
    verdict(4, ok, f"m=6 frames, {len(names['i1'])} i1 and {len(names['i2'])} i2 identities, "
                   f"failures {failed}")


def test_criterion_5_lemma_suite(pm, base_i1, base_i2, frame_i1, frame_i2, verdict):
    t0 = time.perf_counter()
    checks = {"lemma31": lemma31_check, "lemma32": lemma32_check, "lemma33": lemma33_check}
    half = LEMMA_INSTANCES // 2
    insts = lemma_instances(pm, base_i1, frame_i1, half, seed=2024) + \
        [(i, frame_i2) for i in lemma_instances(pm, base_i2, frame_i2, LEMMA_INSTANCES - half, seed=2025)]
    violations, applied = [], 0
    for item in insts:
        inst, frame = item if isinstance(item, tuple) else (item, frame_i1)
        for name, check in checks.items():
            rep = check(inst.cfg, frame) if name == "lemma33" else check(inst.cfg, inst.k, frame)
            applied += rep.verdict == "pass"
            if rep.verdict == "lemma-violation":
                violations.append((name, inst.label, inst.k))
    controls = negative_controls(pm, base_i1, frame_i1)
    misflagged = []
    for name, cfg, k in controls:
        rep = checks[name](cfg, frame_i1) if name == "lemma33" else checks[name](cfg, k, frame_i1)
        if rep.verdict != "hypothesis-failure":
            misflagged.append((name, k, rep.verdict))
    dt = time.perf_counter() - t0
    ok = len(insts) == LEMMA_INSTANCES and not violations and not misflagged and \
        applied > 0 and dt < LEMMA_BUDGET
    verdict(5, ok, f"{len(insts)} instances, {applied} lemma applications, {len(violations)} violations, "
                   f"{len(controls)} negative controls with {len(misflagged)} misflagged, {dt:.0f}s")


def test_criterion_6_induction_certifier(pm, base_i1, verdict):
    frame = build_level_frame(pm, base_i1, 5)
    path = [orbit_vertex(pm, base_i1.vertex, j) for j in range(6)]
    good = certify_path(path, pm, frame)
    # level(omega_j) = j for j = 1..4, read off the frame directly
    at = [level_of(configuration(path[j].region), frame)["at"] for j in range(1, 5)]
    levels_ok = isinstance(good, ConsistentLong) and all(row["at"] for row in good.levels) and \
        at == [[j] for j in range(1, 5)]
    skip = [orbit_vertex(pm, base_i1.vertex, j) for j in (0, 1, 3, 4, 5)]
    bad = certify_path(skip, pm, frame)
    ok = levels_ok and isinstance(bad, Violation) and bad.step == 2
    verdict(6, ok, f"orbit path -> {type(good).__name__} with levels {at}, skip path -> "
                   f"{type(bad).__name__} at step {getattr(bad, 'step', None)}")


def test_criterion_7_exact_distance(pm, base_i1, base_i2, verdict):
    found = {m: exact_distance_remark(pm, base_i1, m).details["distance"] for m in (3, 4, 5)}
    refused = exact_distance_remark(pm, base_i2, 4).verdict == "refused"
    ok = found == {3: 3, 4: 4, 5: 5} and refused
    verdict(7, ok, f"i=1 distances {found}, i>=2 refused={refused}")


def test_criterion_8_bfs_triangulation(pm, base_i1, verdict):
    assert BFS_WORD_CAP <= 8
    t0 = time.perf_counter()
    m = 3
    w = orbit_vertex(pm, base_i1.vertex, m)
    res = bfs_distance(base_i1.vertex, w, cap=BFS_WORD_CAP,
                       extra_witnesses=[pm.witness(j) for j in range(m + 1)])
    ex = exact_distance_remark(pm, base_i1, m)
    lower = upper = ex.details["distance"]
    dt = time.perf_counter() - t0
    ok = res.distance == 3 and len(res.path) == 4 and lower <= res.distance <= upper and dt < BFS_BUDGET
    verdict(8, ok, f"BFS distance {res.distance} at cap {BFS_WORD_CAP} over {res.vertices} vertices, "
                   f"sandwich [{lower}, {upper}], {dt:.1f}s")


def test_criterion_9_asymptotic_ratio(pm, base_i1, base_i2, verdict):
    rep = asymptotic_ratio(pm, base_i1, m_max=8, base_i2=base_i2, m_min=3)
    rows = rep.details["rows"]
    ok = rep.ok and [r["m"] for r in rows] == list(range(3, 9)) and \
        all(r["lower"] == r["upper"] == r["m"] for r in rows) and rep.details["tau_bracket"] == [1, 1]
    verdict(9, ok, f"lower=upper=m for m=3..8: {[(r['lower'], r['upper']) for r in rows]}, "
                   f"tau in {rep.details['tau_bracket']}")


def test_criterion_10_determinism(tmp_path, capsys, verdict):
    outs = []
    for run in ("a", "b"):
        js, svg = tmp_path / f"{run}.json", tmp_path / f"{run}.svg"
        code = main(["push", "--mode", "i1", "--m", "3", "--json", str(js), "--render", str(svg)])
        capsys.readouterr()
        outs.append((code, js.read_bytes(), svg.read_bytes()))
    (c1, j1, s1), (c2, j2, s2) = outs
    ok = c1 == c2 == 0 and j1 == j2 and s1 == s2 and json.loads(j1)["verdict"] == "pass"
    verdict(10, ok, f"two identical runs: JSON {len(j1)} bytes equal={j1 == j2}, "
                    f"SVG {len(s1)} bytes equal={s1 == s2}")
