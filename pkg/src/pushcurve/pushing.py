"""Point-pushing orbits, the level frame, and the distance certificates.

A push map is given by a closed-group word g whose axis projects to a filling
curve.  A vertex (curve u, region Omega) moves under the push to
(u, g^m Omega).  The level frame consists of the half-planes
Delta'_j = g^j(Delta_0*) bounded by translates of one lift of the base curve;
the level predicates and the lemma checks below are evaluated on exact lift
identities and certified boundary-order predicates.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

from flint import acb

from . import geom
from .curves import (
    CurveClass,
    FillingCertificate,
    Lift,
    NotFilling,
    exact_intersection,
    is_filling,
    separating_lifts,
    shortlex,
    simple_curves,
)
from .geom import NotHyperbolic, _Lazy, escalating
from .group import GroupWord, SurfaceGroup
from .regions import (
    Configuration,
    MismatchedHypothesis,
    Region,
    Side,
    VertexS,
    Witness,
    adjacent,
    attracting_maximal,
    configuration,
    disjoint_vertices,
    region_distance,
    region_meets_halfplane,
    region_of,
    regions_meet,
)


class NotFillingError(ValueError):
    def __init__(self, witness: CurveClass):
        super().__init__(f"curve is not filling; disjoint simple curve {witness}")
        self.witness = witness


class SearchExhausted(RuntimeError):
    pass


class NoPathAtCap(RuntimeError):
    pass


MODES = ("i1", "i2")


@dataclass
class Report:
    operation: str
    verdict: str
    hypotheses: List[Tuple[str, bool]] = field(default_factory=list)
    witnesses: List[str] = field(default_factory=list)
    details: Dict[str, object] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return self.verdict == "pass"

    def as_dict(self) -> dict:
        return {
            "operation": self.operation,
            "verdict": self.verdict,
            "hypotheses": [{"name": n, "holds": h} for n, h in self.hypotheses],
            "witnesses": list(self.witnesses),
            "details": self.details,
        }


# --- push maps --------------------------------------------------------------


class PushMap:
    """Push along the axis of g; ``A``/``B`` are its attracting/repelling points."""

    def __init__(self, g: GroupWord, grp: SurfaceGroup, curve: CurveClass,
                 certificate: FillingCertificate, sign: int = 1):
        self.g = g
        self.grp = grp
        self.curve = curve
        self.certificate = certificate
        self.sign = sign
        self._fix = _Lazy()
        self.matrix = grp.matrix(g)

    def fixed(self):
        """(attracting, repelling) boundary values."""

        def compute():
            if geom.classify(self.matrix) is not geom.Kind.Hyperbolic:
                raise NotHyperbolic(str(self.g))
            return geom._fixed_point_values(self.matrix)

        return self._fix.get(compute)

    @property
    def A(self):
        return self.fixed()[0]

    @property
    def B(self):
        return self.fixed()[1]

    def axis_point(self) -> acb:
        """Foot of the perpendicular from O to the axis of g."""
        att, rep = self.fixed()
        return geom.foot(rep, att, self.grp.basepoint_value())

    def witness(self, j: int) -> Witness:
        return Witness(self.g ** j, self.axis_point, f"g^{j} p")

    def power(self, j: int) -> GroupWord:
        return self.g ** j

    def height(self, z: acb):
        att, rep = self.fixed()
        return geom.axis_height(rep, att, z)

    def crossing(self, lf: Lift):
        att, rep = self.fixed()
        e1, e2 = lf.endpoints()
        return geom.crossing_height(rep, att, e1, e2)

    def inverse(self) -> "PushMap":
        return PushMap(self.g.inverse(), self.grp, self.curve, self.certificate, -self.sign)

    def __repr__(self):
        return f"PushMap({self.g})"


_POOLS: Dict[Tuple[int, int], List[CurveClass]] = {}


def simple_pool(grp: SurfaceGroup, cap: int) -> List[CurveClass]:
    key = (id(grp), cap)
    if key not in _POOLS:
        _POOLS[key] = simple_curves(grp, cap)
    return _POOLS[key]


@escalating
def make_push_map(w: GroupWord, grp: SurfaceGroup, cap: int = 4) -> PushMap:
    if grp.is_identity(w):
        raise ValueError("push word is trivial")
    c = CurveClass(w, grp)
    if not c.primitive:
        raise ValueError("push word must be primitive")
    cert = is_filling(c, grp, simple_curve_length_cap=cap, pool=simple_pool(grp, cap))
    if isinstance(cert, NotFilling):
        raise NotFillingError(cert.witness)
    # orient by the given word, not the canonical rotation
    cyc = grp.cyclic_dehn_reduce(w.letters)
    return PushMap(GroupWord(cyc) if len(cyc) == len(w) else w, grp, c, cert)


@dataclass
class BaseVertex:
    vertex: VertexS
    config: Configuration
    intersection: int
    mode: str


@escalating
def select_base_vertex(pm: PushMap, mode: str = "i2", cap: int = 4, curve: Optional[CurveClass] = None) -> BaseVertex:
    """A simple curve with the requested intersection with the push curve.

    The region is the one containing the foot p of the perpendicular from O to
    the axis, so it meets the axis by construction.
    """
    if mode not in MODES:
        raise ValueError(f"mode must be one of {MODES}")
    candidates = [curve] if curve is not None else simple_pool(pm.grp, cap)
    for c in candidates:
        if c.same_curve(pm.curve):
            continue
        n = exact_intersection(c, pm.curve)
        if (mode == "i1" and n == 1) or (mode == "i2" and n >= 2):
            r = region_of(c, pm.witness(0))
            return BaseVertex(VertexS(r), configuration(r), n, mode)
    raise SearchExhausted(f"no simple curve with mode {mode} up to length {cap}")


@escalating
def orbit_vertex(pm: PushMap, v0: VertexS, m: int) -> VertexS:
    """The vertex f^m(u0): same curve, region moved by g^m."""
    if m == 0:
        return v0
    w = v0.region.witness.moved(pm.power(m))
    return VertexS(region_of(v0.curve, w))


# --- level frame ------------------------------------------------------------


@dataclass
class LevelFrame:
    pm: PushMap
    base: BaseVertex
    m: int
    L_A: Lift
    L_star: Lift
    crossings: List[Lift]
    levels: Dict[int, Side]

    @property
    def delta0(self) -> Side:
        return Side.containing_boundary(self.L_A, self.pm.A)

    @property
    def delta0_star(self) -> Side:
        return self.levels[0]

    def level_lift(self, j: int) -> Lift:
        return self.level(j).lift

    def level(self, j: int) -> Side:
        if j not in self.levels:
            self.levels[j] = self.levels[0].image(self.pm.power(j))
        return self.levels[j]


@escalating
def crossings_between(pm: PushMap, c: CurveClass, a: int, b: int) -> List[Lift]:
    """Lifts of c crossing the axis between g^a p and g^b p, ordered toward A."""
    z1 = pm.witness(a).value(pm.grp)
    z2 = pm.witness(b).value(pm.grp)
    found = separating_lifts(c, z1, z2)
    return sorted(found, key=_HeightKey(pm))


class _HeightKey:
    def __init__(self, pm):
        self.pm = pm

    def __call__(self, lf):
        return _Cmp(self.pm.crossing(lf))


class _Cmp:
    __slots__ = ("v",)

    def __init__(self, v):
        self.v = v

    def __lt__(self, other):
        return geom.lt_inf(self.v, other.v)


@escalating
def build_level_frame(pm: PushMap, base: BaseVertex, m: int) -> LevelFrame:
    if m < 1:
        raise ValueError("frame needs m >= 1")
    c = base.vertex.curve
    forward = crossings_between(pm, c, 0, 1)
    if not forward:
        raise MismatchedHypothesis("base curve does not cross the push axis")
    backward = crossings_between(pm, c, -1, 0)
    L_A = forward[0]
    L_star = backward[-1]
    star_side = Side.containing_boundary(L_star, pm.B)
    frame = LevelFrame(pm, base, m, L_A, L_star, forward, {0: star_side})
    for j in range(1, m + 2):
        frame.level(j)
    return frame


@escalating
def frame_report(frame: LevelFrame) -> Report:
    """Provenance identities and the ordering of the frame geodesics."""
    pm, m = frame.pm, frame.m
    hyps = []
    wit = []
    # g maps P_jQ_j to P_{j+1}Q_{j+1}: compare the g-image with the lift found
    # independently as the last crossing of [g^j p, g^{j+1} p]
    provenance_ok = True
    for j in range(0, m):
        image = frame.level_lift(j).translate(pm.g.letters)
        found = crossings_between(pm, frame.base.vertex.curve, j, j + 1)[-1]
        same = image.id == found.id == frame.level_lift(j + 1).id
        provenance_ok &= same
        # arc endpoints: g(P_j) = P_{j+1}
        r1, a1 = image.endpoints()
        r2, a2 = frame.level_lift(j + 1).endpoints()
        if not (r1.overlaps(r2) and a1.overlaps(a2)):
            provenance_ok = False
    hyps.append(("frame maps forward under g", provenance_ok))
    B = pm.B
    above_ok = True
    for j in range(1, m + 1):
        for k in range(j + 1, m + 1):
            above_ok &= lies_above(frame.level_lift(j), frame.level_lift(k), B)
    hyps.append(("P_jQ_j above P_kQ_k for 1 <= j < k <= m", above_ok))
    L1 = frame.level_lift(1)
    if frame.base.intersection == 1:
        deg = frame.L_A.id == L1.id
        hyps.append(("P_0 = P_1 and Q_0 = Q_1", deg))
    else:
        strict = frame.L_A.id != L1.id and lies_above(frame.L_A, L1, B)
        hyps.append(("P_0Q_0 strictly above P_1Q_1", strict))
    ok = all(h for _, h in hyps)
    return Report("build_level_frame", "pass" if ok else "fail", hyps, wit,
                  {"m": m, "intersection": frame.base.intersection})


@escalating
def lies_above(l1: Lift, l2: Lift, ref) -> bool:
    """l1 lies in the closed side of l2 containing the boundary point ref."""
    if l1.curve.same_curve(l2.curve) and l1.id == l2.id:
        return True
    if l1.linked(l2):
        raise ValueError("lies_above needs unlinked geodesics")
    side = Side.containing_boundary(l2, ref)
    rep, att = l1.endpoints()
    return side.contains_boundary(rep) and side.contains_boundary(att)


# --- levels -------------------------------------------------------------------


@escalating
def located_at_level(cfg: Configuration, k: int, frame: LevelFrame) -> bool:
    """Some maximal element of the region equals Delta'_k (lift identity)."""
    r = cfg.region
    lvl = frame.level(k)
    if not r.curve.same_curve(lvl.lift.curve):
        return False
    z = r.point()
    if lvl.contains_point(z):
        return False
    between = separating_lifts(r.curve, z, lvl.lift.point(), exclude=[lvl.lift.id])
    return not between


@escalating
def located_above_level(cfg: Configuration, k: int, frame: LevelFrame) -> bool:
    return region_meets_halfplane(cfg.region, frame.level(k))


@escalating
def level_of(cfg: Configuration, frame: LevelFrame, kmax: Optional[int] = None) -> Dict[str, object]:
    kmax = frame.m if kmax is None else kmax
    at = [k for k in range(0, kmax + 1) if located_at_level(cfg, k, frame)]
    above = [k for k in range(0, kmax + 1) if located_above_level(cfg, k, frame)]
    return {"at": at, "above": above}


@escalating
def attracting_element(cfg: Configuration, pm: PushMap) -> Side:
    return attracting_maximal(cfg.region, pm.A)


def _endpoint_above(frame: LevelFrame, side: Side, k: int) -> List[bool]:
    """For each endpoint of the side's boundary: lies above P_kQ_k."""
    lvl = frame.level(k)
    out = []
    for x in side.lift.endpoints():
        if lvl.lift.curve.same_curve(side.lift.curve) and lvl.lift.id == side.lift.id:
            out.append(True)
        else:
            out.append(lvl.contains_boundary(x))
    return out


def _figure_case(cfg: Configuration, frame: LevelFrame, delta: Side, k: int) -> str:
    """Which picture the region is in relative to level k."""
    lvl = frame.level(k)
    if not region_meets_halfplane(cfg.region, lvl.complement()):
        return "region-inside-level"
    if not lvl.lift.curve.same_curve(delta.lift.curve) or lvl.lift.id != delta.lift.id:
        if lvl.lift.linked(delta.lift):
            return "level-crosses-boundary"
    return "level-crosses-region"


@escalating
def lemma31_check(cfg: Configuration, k: int, frame: LevelFrame) -> Report:
    hyp = k <= frame.m - 1 and located_above_level(cfg, k, frame)
    if not hyp:
        return Report("lemma31_check", "hypothesis-failure", [("located above level k, k <= m-1", False)])
    delta = attracting_element(cfg, frame.pm)
    flags = _endpoint_above(frame, delta, k + 1)
    at_k = _endpoint_above(frame, delta, k)
    case = _figure_case(cfg, frame, delta, k)
    # inside the level both endpoints are above it; when the level crosses
    # the boundary one of them is; otherwise only the conclusion applies
    if case == "region-inside-level":
        case_ok = all(at_k)
    elif case == "level-crosses-boundary":
        case_ok = any(at_k)
    else:
        case_ok = True
    verdict = "pass" if any(flags) and case_ok else "lemma-violation"
    return Report("lemma31_check", verdict, [("located above level k, k <= m-1", True)],
                  [str(delta)], {"k": k, "case": case, "endpoints_above": flags,
                                 "endpoints_above_k": at_k})


@escalating
def lemma32_check(cfg: Configuration, k: int, frame: LevelFrame) -> Report:
    hyp = 1 <= k <= frame.m - 1 and located_above_level(cfg, k, frame)
    if not hyp:
        return Report("lemma32_check", "hypothesis-failure", [("located above level k, 1 <= k <= m-1", False)])
    pm, m = frame.pm, frame.m
    delta = attracting_element(cfg, pm)
    dm = frame.level(m)
    not_contained = not dm.contains_side(delta)
    axis_meets = delta.contains_boundary(pm.A) or _links_axis(pm, delta.lift)
    meets = delta.meets(dm)
    ok = not_contained and axis_meets and meets
    return Report("lemma32_check", "pass" if ok else "lemma-violation",
                  [("located above level k, 1 <= k <= m-1", True)], [str(delta)],
                  {"k": k, "not_contained": not_contained, "meets_axis": axis_meets, "meets_level_m": meets})


def _links_axis(pm: PushMap, lf: Lift) -> bool:
    rep, att = lf.endpoints()
    a, b = pm.A, pm.B
    return geom.ccw_values(b, rep, a) != geom.ccw_values(b, att, a)


@escalating
def lemma33_check(cfg: Configuration, frame: LevelFrame, target: Optional[VertexS] = None,
                  prefer_level: bool = False) -> Report:
    """Distance at least two from u_m, with the branch of the argument.

    When both hypotheses hold the level m-1 argument is used unless
    ``prefer_level`` asks for the level m-2 one.
    """
    pm, m = frame.pm, frame.m
    above = located_above_level(cfg, m - 1, frame)
    at = located_at_level(cfg, m - 2, frame)
    hyps = [("located above level m-1", above), ("located at level m-2", at)]
    if not (above or at):
        return Report("lemma33_check", "hypothesis-failure", hyps)
    um = target if target is not None else orbit_vertex(pm, frame.base.vertex, m)
    r = cfg.region
    dm = frame.level(m)
    details: Dict[str, object] = {}
    if above and not (prefer_level and at):
        delta = attracting_element(cfg, pm)
        if not delta.lift.curve.same_curve(dm.lift.curve) and delta.lift.linked(dm.lift):
            branch = "boundary-crossing"
            established = exact_intersection(r.curve, um.curve) > 0
        else:
            branch = "arc-containment"
            established = delta.contains_side(dm.complement()) and not _regions_meet_any(r, um.region)
    else:
        branch = "level-m-2"
        star = attracting_element(cfg, pm)
        covers = star.contains_side(frame.level(m - 1).complement())
        established = covers and not _regions_meet_any(r, um.region)
        details["companion_covers_complement"] = covers
    # independent confirmation: not equal and not spanning an edge
    direct = VertexS(r) != um and not disjoint_vertices(VertexS(r), um)
    details.update({"branch": branch, "branch_established": established, "direct": direct})
    verdict = "pass" if established and direct else "lemma-violation"
    return Report("lemma33_check", verdict, hyps, [branch], details)


def _regions_meet_any(r1: Region, r2: Region) -> bool:
    if r1.curve.same_curve(r2.curve):
        return r1 == r2
    return regions_meet(r1, r2)


# --- induction certifier ------------------------------------------------------


@dataclass
class ConsistentLong:
    s: int
    levels: List[Dict[str, object]]


@dataclass
class Violation:
    step: int
    lemma: str
    witness: str


@escalating
def certify_path(path: Sequence[VertexS], pm: PushMap, frame: LevelFrame):
    """Replay the level induction along a candidate path [u0, ..., us, um]."""
    m = frame.m
    if m < 3:
        raise ValueError("the certifier needs m >= 3")
    u0 = frame.base.vertex
    um = orbit_vertex(pm, u0, m)
    if path[0] != u0 or path[-1] != um:
        return Violation(0, "endpoints", "path does not join u0 to u_m")
    levels = []
    for j in range(1, len(path)):
        v = path[j]
        cfg = configuration(v.region)
        if j <= m - 2:
            at = located_at_level(cfg, j, frame)
            above = located_above_level(cfg, j, frame)
            levels.append({"step": j, "at": at, "above": above})
            if not (at or above):
                return Violation(j, "induction", f"{v} neither at nor above level {j}")
        if not disjoint_vertices(path[j - 1], v):
            return Violation(j, "unit-step", f"{path[j - 1]} and {v} are not disjoint")
    s = len(path) - 2
    if s < m - 1:
        return Violation(s + 1, "length", f"path of length {s + 1} shorter than {m}")
    cfg = configuration(path[m - 2].region)
    rep = lemma33_check(cfg, frame, um)
    if rep.verdict != "pass":
        return Violation(m - 2, "lemma33", rep.verdict)
    return ConsistentLong(s, levels)


# --- bounds ---------------------------------------------------------------------


def _require_i1(base: BaseVertex):
    if base.intersection != 1:
        raise MismatchedHypothesis("requires intersection number 1 with the push curve")


@escalating
def upper_bound_walk(pm: PushMap, base: BaseVertex, kmax: int = 5) -> Report:
    _require_i1(base)
    u0 = base.vertex
    u1 = orbit_vertex(pm, u0, 1)
    u2 = orbit_vertex(pm, u0, 2)
    d01 = adjacent(u0.region, u1.region)
    d12 = adjacent(u1.region, u2.region)
    meets02 = u0 != u2 and not disjoint_vertices(u0, u2)
    hyps = [("u and f(u) bound a punctured cylinder", d01), ("f(u) and f^2(u) disjoint", d12),
            ("u meets f^2(u)", meets02)]
    rows = []
    for k in range(1, kmax + 1):
        rows.append({"k": k, "upper": 2 * k, "ratio_bound": 1})
    ok = d01 and d12 and meets02
    return Report("upper_bound_walk", "pass" if ok else "hypothesis-failure", hyps, [],
                  {"d_u_fu": 1 if d01 else None, "d_u_f2u": 2 if (d01 and d12 and meets02) else None,
                   "rows": rows})


@escalating
def lower_bound_theorem(pm: PushMap, base: BaseVertex, m: int) -> Report:
    if abs(m) < 3:
        raise ValueError("the lower bound needs |m| >= 3")
    if m < 0:
        pm = pm.inverse()
    mm = abs(m)
    hyps = [("filling certificate", isinstance(pm.certificate, FillingCertificate)),
            ("intersection >= 2", base.intersection >= 2 and
             exact_intersection(base.vertex.curve, pm.curve) == base.intersection),
            ("region meets axis", _region_meets_axis(pm, base.vertex.region))]
    frame = build_level_frame(pm, base, mm)
    fr = frame_report(frame)
    hyps.append(("level frame invariants", fr.ok))
    ok = all(h for _, h in hyps)
    return Report("lower_bound_theorem", "pass" if ok else "hypothesis-failure", hyps, [],
                  {"m": m, "lower": mm if ok else None, "orientation": "g" if m > 0 else "g^-1"})


def _region_meets_axis(pm: PushMap, r: Region, periods: int = 2) -> bool:
    """Some axis point near p lies in r (compared by fingerprint).

    The axis points tried are g^j p and one point between each pair of
    consecutive crossing lifts, for |j| <= periods.
    """
    c = r.curve
    for j in range(-periods, periods + 1):
        if region_of(c, pm.witness(j)) == r:
            return True
    cr = crossings_between(pm, c, -periods, periods)
    for l1, l2 in zip(cr, cr[1:]):
        w = Witness(GroupWord(), _AxisPoint(pm, pm.crossing(l1), pm.crossing(l2)), "axis")
        if region_of(c, w) == r:
            return True
    return False


@escalating
def upper_chain(pm: PushMap, base: BaseVertex, m: int) -> Report:
    """Same-fiber path from u0 to u_m crossing the axis lifts one at a time."""
    u0 = base.vertex
    c = u0.curve
    cr = crossings_between(pm, c, 0, m)
    um = orbit_vertex(pm, u0, m)
    verts = [u0]
    for l1, l2 in zip(cr, cr[1:]):
        w = Witness(GroupWord(), _AxisPoint(pm, pm.crossing(l1), pm.crossing(l2)), "axis")
        verts.append(VertexS(region_of(c, w)))
    verts.append(um)
    steps_ok = all(adjacent(x.region, y.region) for x, y in zip(verts, verts[1:]))
    ok = steps_ok and len(verts) - 1 == len(cr)
    return Report("upper_chain", "pass" if ok else "fail",
                  [("unit steps", steps_ok), ("one step per crossing", len(verts) - 1 == len(cr))], [],
                  {"m": m, "upper": len(verts) - 1 if ok else None})


class _AxisPoint:
    """Point on the push axis between two crossing heights (recomputed per precision)."""

    def __init__(self, pm: PushMap, lo, hi):
        self.pm = pm
        self.lo_hi = (lo.mid(), hi.mid())

    def __call__(self):
        att, rep = self.pm.fixed()
        lo, hi = self.lo_hi
        return geom.point_on_axis(rep, att, (lo * hi).sqrt())


@escalating
def exact_distance_remark(pm: PushMap, base: BaseVertex, m: int) -> Report:
    if base.intersection != 1:
        return Report("exact_distance_remark", "refused",
                      [("intersection number 1", False)], [], {"m": m})
    if not _region_meets_axis(pm, base.vertex.region):
        return Report("exact_distance_remark", "refused", [("region meets axis", False)], [], {"m": m})
    verts = [orbit_vertex(pm, base.vertex, j) for j in range(m + 1)]
    D = [region_distance(a.region, b.region) for a, b in zip(verts, verts[1:])]
    chain_ok = all(d == 1 for d in D)
    total = sum(D)
    ok = chain_ok and total == m
    return Report("exact_distance_remark", "pass" if ok else "fail",
                  [("intersection number 1", True), ("region meets axis", True),
                   ("adjacent consecutive regions", chain_ok)], [],
                  {"m": m, "sum_D": total, "distance": m if ok else None})


@escalating
def asymptotic_ratio(pm: PushMap, base_i1: BaseVertex, m_max: int = 8, base_i2: Optional[BaseVertex] = None,
                     m_min: int = 3) -> Report:
    rows = []
    ok = True
    for m in range(m_min, m_max + 1):
        ex = exact_distance_remark(pm, base_i1, m)
        frame = build_level_frame(pm, base_i1, m)
        path = [orbit_vertex(pm, base_i1.vertex, j) for j in range(m + 1)]
        cert = certify_path(path, pm, frame)
        lower = m if isinstance(cert, ConsistentLong) and frame_report(frame).ok else None
        row = {"m": m}
        if base_i2 is not None:
            # the lower bound at another vertex bounds the same translation length
            lb = lower_bound_theorem(pm, base_i2, m)
            row["lower_i2"] = lb.details["lower"]
            ok &= lb.ok
        upper = ex.details.get("distance")
        ok &= lower is not None and lower == upper
        row.update({"lower": lower, "upper": upper,
                    "ratio_lower": f"{lower}/{m}" if lower else None,
                    "ratio_upper": f"{upper}/{m}" if upper else None})
        rows.append(row)
    return Report("asymptotic_ratio", "pass" if ok else "fail", [], [],
                  {"rows": rows, "tau_bracket": [1, 1] if ok else None})


# --- distance oracle --------------------------------------------------------------


@dataclass
class BfsResult:
    distance: Optional[int]
    path: List[VertexS]
    vertices: int
    curves: int


@escalating
def _sample_points(grp, witnesses: Sequence[Witness], radius: int) -> List[Witness]:
    """Witnesses plus basepoint translates in the tiles around each witness."""
    out = list(witnesses)
    seen = set()
    for w in witnesses:
        t0 = GroupWord(grp.reduce_point(w.value(grp))[0])
        tiles = [t0]
        frontier = [t0]
        for _ in range(radius):
            nxt = []
            for t in frontier:
                for s in grp.side_letter:
                    nb = GroupWord(grp.nf(t * GroupWord((s,))))
                    if nb.letters not in seen:
                        seen.add(nb.letters)
                        nxt.append(nb)
            tiles += nxt
            frontier = nxt
        out += [Witness(t, grp.basepoint_value, "tile") for t in tiles]
    uniq = {}
    for w in out:
        uniq.setdefault((w.word.letters, w.label), w)
    return list(uniq.values())


@escalating
def bfs_distance(v: VertexS, w: VertexS, cap: int = 3, radius: int = 1, max_depth: int = 6,
                 extra_witnesses: Sequence[Witness] = ()) -> BfsResult:
    """Shortest path in a finite subgraph of the curve complex.

    Vertices are (simple curve of length <= cap, region containing a sample
    point).  Edges are certified: same curve with adjacent regions, or curves
    disjoint on the closed surface whose regions share a sample point.  The
    result is an upper bound for the curve-complex distance.
    """
    if v == w:
        return BfsResult(0, [v], 1, 1)
    grp = v.curve.grp
    curves: Dict[Tuple[int, ...], CurveClass] = {}
    for c in [v.curve, w.curve] + simple_pool(grp, cap):
        curves.setdefault(c.key, c)
    keys = sorted(curves, key=shortlex)
    pts = _sample_points(grp, [v.region.witness, w.region.witness, *extra_witnesses], radius)
    # vertex table: (curve key, fingerprint) -> (VertexS, point indices)
    table: Dict[tuple, Tuple[VertexS, set]] = {}
    for ck in keys:
        c = curves[ck]
        for i, p in enumerate(pts):
            r = region_of(c, p)
            ent = table.setdefault(r.key(), (VertexS(r), set()))
            ent[1].add(i)
    table.setdefault(v.key(), (v, set()))
    table.setdefault(w.key(), (w, set()))
    disjoint: Dict[Tuple[tuple, tuple], bool] = {}

    def curves_disjoint(a: tuple, b: tuple) -> bool:
        k = (a, b) if shortlex(a) <= shortlex(b) else (b, a)
        if k not in disjoint:
            disjoint[k] = exact_intersection(curves[a], curves[b]) == 0
        return disjoint[k]

    by_curve: Dict[tuple, List[tuple]] = {}
    for key in sorted(table, key=lambda k: (shortlex(k[0]), sorted(shortlex(x) for x in k[1]))):
        by_curve.setdefault(key[0], []).append(key)

    def neighbors(key):
        vert, ptsset = table[key]
        out = []
        for ck in keys:
            for other in by_curve.get(ck, []):
                if other == key:
                    continue
                ov, ops = table[other]
                if ck == key[0]:
                    if adjacent(vert.region, ov.region):
                        out.append(other)
                elif ptsset & ops and curves_disjoint(key[0], ck):
                    out.append(other)
        return out

    start, goal = v.key(), w.key()
    prev = {start: None}
    queue = deque([(start, 0)])
    while queue:
        key, d = queue.popleft()
        if d >= max_depth:
            continue
        for nb in neighbors(key):
            if nb in prev:
                continue
            prev[nb] = key
            if nb == goal:
                path = [nb]
                while prev[path[-1]] is not None:
                    path.append(prev[path[-1]])
                return BfsResult(d + 1, [table[k][0] for k in reversed(path)], len(table), len(keys))
            queue.append((nb, d + 1))
    raise NoPathAtCap(f"no path within depth {max_depth} at cap {cap}")
