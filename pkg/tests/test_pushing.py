import pytest

from pushcurve import geom
from pushcurve.curves import exact_intersection
from pushcurve.pushing import (
    ConsistentLong,
    NotFillingError,
    Violation,
    bfs_distance,
    build_level_frame,
    certify_path,
    exact_distance_remark,
    frame_report,
    lemma31_check,
    lemma32_check,
    lemma33_check,
    located_above_level,
    located_at_level,
    lower_bound_theorem,
    make_push_map,
    orbit_vertex,
    upper_bound_walk,
    upper_chain,
)
from pushcurve.regions import MismatchedHypothesis, VertexS, configuration, deck_action

from conftest import W
from instances import scan_regions


def test_generator_push_is_not_filling(G):
    with pytest.raises(NotFillingError) as info:
        make_push_map(W("a1"), G)
    assert str(info.value.witness) == "a2"


def test_fixture_push_map(pm):
    assert pm.certificate.bounded and pm.certificate.cap == 4
    assert geom.classify(pm.matrix) is geom.Kind.Hyperbolic


def test_base_vertices(pm, base_i1, base_i2):
    assert base_i1.intersection == exact_intersection(base_i1.vertex.curve, pm.curve) == 1
    assert base_i2.intersection == exact_intersection(base_i2.vertex.curve, pm.curve) >= 2
    assert str(base_i1.vertex.curve) == "a1"
    assert str(base_i2.vertex.curve) == "a1 b1"


def test_orbit_vertex_zero(pm, base_i1):
    assert orbit_vertex(pm, base_i1.vertex, 0) == base_i1.vertex


def test_orbit_vertex_is_the_deck_image(pm, base_i1):
    r = base_i1.vertex.region
    assert orbit_vertex(pm, base_i1.vertex, 2).region == deck_action(pm.g ** 2, r)


@pytest.mark.parametrize("which", ["frame_i1", "frame_i2"])
def test_frame_invariants(request, which):
    rep = frame_report(request.getfixturevalue(which))
    assert rep.ok, rep.hypotheses


def test_attracting_side_of_first_crossing(pm, frame_i1):
    assert frame_i1.delta0.contains_boundary(pm.A)
    assert frame_i1.delta0_star.contains_boundary(pm.B)


def test_orbit_regions_sit_at_their_levels(pm, base_i1, frame_i1):
    m = frame_i1.m
    for j in range(1, m):
        cfg = configuration(orbit_vertex(pm, base_i1.vertex, j).region)
        assert located_at_level(cfg, j, frame_i1)
        assert not located_above_level(cfg, j, frame_i1)
    assert not located_at_level(base_i1.config, m, frame_i1)


def test_levels_above_are_monotone(pm, base_i1, base_i2, frame_i1, frame_i2):
    for base, frame in ((base_i1, frame_i1), (base_i2, frame_i2)):
        for j in range(0, 4):
            cfg = configuration(orbit_vertex(pm, base.vertex, j).region)
            flags = [located_above_level(cfg, k, frame) for k in range(frame.m + 1)]
            first = flags.index(True) if True in flags else len(flags)
            assert all(flags[first:])


def test_lemma31_cases(pm, base_i1, frame_i1):
    cfg = configuration(orbit_vertex(pm, base_i1.vertex, 1).region)
    rep = lemma31_check(cfg, 3, frame_i1)
    assert rep.ok and rep.details["case"] == "region-inside-level"
    assert all(rep.details["endpoints_above_k"])


def test_lemma31_crossing_case_appears(pm, base_i2, frame_i2):
    for cfg in scan_regions(pm, base_i2, frame_i2):
        for k in range(frame_i2.m):
            rep = lemma31_check(cfg, k, frame_i2)
            assert rep.verdict != "lemma-violation"
            if rep.ok and rep.details["case"] == "level-crosses-boundary":
                assert any(rep.details["endpoints_above_k"])
                return
    pytest.fail("no crossing configuration found")


def test_lemma31_flags_hypothesis_failure(pm, base_i1, frame_i1):
    cfg = configuration(orbit_vertex(pm, base_i1.vertex, 3).region)
    assert lemma31_check(cfg, 3, frame_i1).verdict == "hypothesis-failure"


def test_lemma32_on_the_orbit(pm, base_i1, frame_i1):
    m = frame_i1.m
    for j in range(0, m - 1):
        cfg = configuration(orbit_vertex(pm, base_i1.vertex, j).region)
        for k in range(max(1, j + 1), m):
            rep = lemma32_check(cfg, k, frame_i1)
            assert rep.ok, (j, k, rep.details)
            assert rep.details["not_contained"] and rep.details["meets_axis"] and rep.details["meets_level_m"]


def test_lemma33_branches(pm, base_i1, frame_i1):
    m = frame_i1.m
    cfg = configuration(orbit_vertex(pm, base_i1.vertex, m - 2).region)
    first = lemma33_check(cfg, frame_i1)
    second = lemma33_check(cfg, frame_i1, prefer_level=True)
    assert first.ok and first.details["branch"] == "arc-containment"
    assert second.ok and second.details["branch"] == "level-m-2"


def test_lemma33_crossing_branch_has_intersecting_curves(pm, base_i2, frame_i2):
    for cfg in scan_regions(pm, base_i2, frame_i2):
        rep = lemma33_check(cfg, frame_i2)
        assert rep.verdict != "lemma-violation"
        if rep.ok and rep.details["branch"] == "boundary-crossing":
            assert exact_intersection(cfg.region.curve, base_i2.vertex.curve) > 0
            return
    pytest.fail("no boundary-crossing configuration found")


def test_certify_orbit_path(pm, base_i1):
    frame = build_level_frame(pm, base_i1, 5)
    path = [orbit_vertex(pm, base_i1.vertex, j) for j in range(6)]
    res = certify_path(path, pm, frame)
    assert isinstance(res, ConsistentLong) and res.s == 4
    assert all(row["at"] for row in res.levels)


def test_certify_rejects_a_level_skip(pm, base_i1):
    frame = build_level_frame(pm, base_i1, 5)
    path = [orbit_vertex(pm, base_i1.vertex, j) for j in (0, 1, 3, 4, 5)]
    res = certify_path(path, pm, frame)
    assert isinstance(res, Violation) and res.step == 2


def test_certify_rejects_wrong_endpoints(pm, base_i1):
    frame = build_level_frame(pm, base_i1, 4)
    path = [orbit_vertex(pm, base_i1.vertex, j) for j in range(4)]
    assert isinstance(certify_path(path, pm, frame), Violation)


def test_upper_bound_walk(pm, base_i1):
    rep = upper_bound_walk(pm, base_i1)
    assert rep.ok
    assert rep.details["d_u_fu"] == 1 and rep.details["d_u_f2u"] == 2


def test_upper_bound_walk_needs_intersection_one(pm, base_i2):
    with pytest.raises(MismatchedHypothesis):
        upper_bound_walk(pm, base_i2)


@pytest.mark.parametrize("m,expected", [(5, 5), (-4, 4), (3, 3)])
def test_lower_bound(pm, base_i2, m, expected):
    rep = lower_bound_theorem(pm, base_i2, m)
    assert rep.ok and rep.details["lower"] == expected


def test_lower_bound_scope(pm, base_i2):
    with pytest.raises(ValueError):
        lower_bound_theorem(pm, base_i2, 2)


def test_lower_bound_refuses_intersection_one(pm, base_i1):
    assert lower_bound_theorem(pm, base_i1, 4).verdict == "hypothesis-failure"


def test_upper_chain_steps(pm, base_i2):
    rep = upper_chain(pm, base_i2, 3)
    assert rep.ok and rep.details["upper"] == 3 * base_i2.intersection


@pytest.mark.parametrize("m", [3, 4, 5])
def test_exact_distance(pm, base_i1, m):
    rep = exact_distance_remark(pm, base_i1, m)
    assert rep.ok and rep.details["distance"] == m == rep.details["sum_D"]


def test_exact_distance_refuses_higher_intersection(pm, base_i2):
    assert exact_distance_remark(pm, base_i2, 4).verdict == "refused"


def test_bfs_small_cases(pm, base_i1):
    v = base_i1.vertex
    assert bfs_distance(v, v).distance == 0
    w = VertexS(deck_action(W("b1"), v.region))
    assert bfs_distance(v, w).distance == 1


def test_bfs_respects_exact_distance(pm, base_i1):
    for m in (1, 2):
        w = orbit_vertex(pm, base_i1.vertex, m)
        res = bfs_distance(base_i1.vertex, w, extra_witnesses=[pm.witness(j) for j in range(m + 1)])
        assert res.distance == m
