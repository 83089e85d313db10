"""Complementary regions of a lift family and their half-plane structure.

A region is a component of the plane minus all lifts of a simple curve.  It is
named by its fingerprint: the set of lift ids separating the basepoint O from a
witness point inside the region.  Two regions of one curve are equal iff their
fingerprints agree, and the lifts separating two regions are exactly the
symmetric difference of their fingerprints.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Dict, FrozenSet, List, Optional, Sequence, Tuple

from flint import acb

from . import geom
from .curves import (
    CurveClass,
    Lift,
    apply_word_point,
    exact_intersection,
    lifts_near,
    separating_lifts,
    shortlex,
)
from .geom import PrecisionExhausted, escalating
from .group import GroupWord


class TruncationEscape(RuntimeError):
    pass


class MismatchedHypothesis(ValueError):
    pass


class MismatchedFibers(ValueError):
    pass


LiftId = Tuple[int, ...]


class Witness:
    """A point of H given as ``word * seed`` with a recipe for the seed."""

    __slots__ = ("word", "seed", "label")

    def __init__(self, word: GroupWord, seed: Callable[[], acb], label: str = ""):
        self.word = word
        self.seed = seed
        self.label = label

    def value(self, grp) -> acb:
        return apply_word_point(grp, self.word.letters, self.seed())

    def moved(self, h: GroupWord) -> "Witness":
        return Witness(h * self.word, self.seed, self.label)


class Region:
    """Component of H minus the lifts of ``curve``, named by its fingerprint."""

    def __init__(self, curve: CurveClass, fingerprint: FrozenSet[LiftId], witness: Witness,
                 lifts: Dict[LiftId, Lift]):
        self.curve = curve
        self.fingerprint = fingerprint
        self.witness = witness
        self.fp_lifts = lifts

    @property
    def grp(self):
        return self.curve.grp

    def point(self) -> acb:
        return self.witness.value(self.grp)

    def key(self):
        return (self.curve.key, tuple(sorted(self.fingerprint, key=shortlex)))

    def __eq__(self, other):
        return isinstance(other, Region) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        return f"Region({self.curve}, |fp|={len(self.fingerprint)})"

    def serialize(self) -> str:
        ids = ";".join(" ".join(str(x) for x in lid) for lid in sorted(self.fingerprint, key=shortlex))
        return f"{self.curve.root}|{ids}"


def basepoint_witness(grp) -> Witness:
    return Witness(GroupWord(), grp.basepoint_value, "O")


@escalating
def region_of(curve: CurveClass, witness: Witness) -> Region:
    grp = curve.grp
    z = witness.value(grp)
    lifts = separating_lifts(curve, grp.basepoint_value(), z)
    return Region(curve, frozenset(lf.id for lf in lifts), witness, {lf.id: lf for lf in lifts})


def region_of_basepoint(curve: CurveClass, grp=None, depth: int = 0) -> Region:
    return region_of(curve, basepoint_witness(curve.grp))


def deck_action(h: GroupWord, r: Region) -> Region:
    if h.is_identity():
        return r
    return region_of(r.curve, r.witness.moved(h))


def separation(r1: Region, r2: Region) -> FrozenSet[LiftId]:
    """Lift ids separating two regions of the same curve."""
    if not r1.curve.same_curve(r2.curve):
        raise MismatchedFibers("regions of different curves")
    return r1.fingerprint ^ r2.fingerprint


def adjacent(r1: Region, r2: Region) -> bool:
    return len(separation(r1, r2)) == 1


def region_distance(r1: Region, r2: Region) -> int:
    """Number of lifts separating the regions."""
    return len(separation(r1, r2))


# --- half-planes bounded by lifts ------------------------------------------


class Side:
    """One open side of a lift: ``left`` relative to the orientation rep -> att."""

    __slots__ = ("lift", "left")

    def __init__(self, lift: Lift, left: bool):
        self.lift = lift
        self.left = left

    @classmethod
    def containing(cls, lift: Lift, z: acb) -> "Side":
        return cls(lift, lift.side(z))

    @classmethod
    def containing_boundary(cls, lift: Lift, x) -> "Side":
        return cls(lift, lift.boundary_side_of(x))

    def complement(self) -> "Side":
        return Side(self.lift, not self.left)

    def contains_point(self, z: acb) -> bool:
        return self.lift.side(z) == self.left

    def contains_boundary(self, x) -> bool:
        return self.lift.boundary_side_of(x) == self.left

    def arc(self):
        """(start, end) values of the ccw boundary arc of this side."""
        rep, att = self.lift.endpoints()
        return (att, rep) if self.left else (rep, att)

    def contains_side(self, other: "Side") -> bool:
        """Closed containment of the other open side in this one."""
        if self.lift.id == other.lift.id and self.lift.curve.same_curve(other.lift.curve):
            return self.left == other.left
        if self.lift.linked(other.lift):
            return False
        s, e = other.arc()
        return (self.contains_boundary(s) and self.contains_boundary(e)
                and _arc_inside(self.arc(), other.arc()))

    def meets(self, other: "Side") -> bool:
        if self.lift.curve.same_curve(other.lift.curve) and self.lift.id == other.lift.id:
            return self.left == other.left
        if self.lift.linked(other.lift):
            return True
        return not self.complement().contains_side(other)

    def same(self, other: "Side") -> bool:
        return (self.lift.curve.same_curve(other.lift.curve) and self.lift.id == other.lift.id
                and self.left == other.left)

    def image(self, h: GroupWord) -> "Side":
        # deck transformations preserve orientation, hence left/right
        return Side(self.lift.translate(h.letters), self.left)

    def to_halfplane(self) -> geom.HalfPlane:
        g = self.lift.geodesic()
        return geom.HalfPlane(g, g.q, g.p) if self.left else geom.HalfPlane(g, g.p, g.q)

    def __repr__(self):
        return f"Side({self.lift}, {'L' if self.left else 'R'})"


def _arc_inside(outer, inner) -> bool:
    """inner arc (start, end) lies in the closed outer arc, ccw orientation."""
    s, e = outer
    s2, e2 = inner
    ok_s = _same(s, s2) or geom.ccw_values(s, s2, e)
    ok_e = _same(e, e2) or geom.ccw_values(s, e2, e)
    if not (ok_s and ok_e):
        return False
    if _same(s, s2) or _same(e, e2):
        return True
    return geom.ccw_values(s, s2, e2) and geom.ccw_values(s2, e2, e)


def _same(x, y) -> bool:
    if x is None or y is None:
        return x is None and y is None
    return False


@escalating
def lift_meets_region(r: Region, m: Lift) -> bool:
    """Geodesic m (of another curve) passes through the open region r.

    m misses r iff it lies beyond a single lift of r's curve; such a lift
    separates the witness from any point of m and is disjoint from m.
    """
    if m.curve.same_curve(r.curve):
        return False
    z = r.point()
    for lf in separating_lifts(r.curve, z, m.point()):
        if not lf.linked(m):
            return False
    return True


@escalating
def region_meets_halfplane(r: Region, h: Side) -> bool:
    """The open region r meets the open half-plane h."""
    z = r.point()
    if h.lift.curve.same_curve(r.curve):
        return h.contains_point(z)
    if lift_meets_region(r, h.lift):
        return True
    return h.contains_point(z)


@escalating
def regions_meet(r1: Region, r2: Region) -> bool:
    """Open regions of two different curves intersect.

    They are disjoint iff a lift of r1's curve separates the witnesses and
    misses r2 altogether.
    """
    if r1.curve.same_curve(r2.curve):
        return r1 == r2
    z1, z2 = r1.point(), r2.point()
    for lf in separating_lifts(r1.curve, z1, z2):
        if not lift_meets_region(r2, lf):
            return False
    return True


# --- maximal elements and orders -------------------------------------------


@dataclass
class TreeElement:
    side: Side
    order: int
    parent: Optional[LiftId] = None


@dataclass
class HalfPlaneTree:
    region: Region
    radius: int
    order_depth: int
    elements: Dict[LiftId, TreeElement] = field(default_factory=dict)

    @property
    def maximal(self) -> List[Side]:
        return [e.side for k, e in sorted(self.elements.items(), key=lambda kv: shortlex(kv[0]))
                if e.order == 1]

    def of_order(self, n: int) -> List[TreeElement]:
        return [e for k, e in sorted(self.elements.items(), key=lambda kv: shortlex(kv[0]))
                if e.order == n]

    def element_for(self, lid: LiftId) -> Optional[TreeElement]:
        return self.elements.get(lid)


@escalating
def order_of(r: Region, lf: Lift) -> Tuple[int, List[Lift]]:
    """Order of the half-plane bounded by lf and away from r.

    Returns 1 + the number of lifts separating the region from lf, together
    with those lifts sorted from the region outward.
    """
    z = r.point()
    between = separating_lifts(r.curve, z, lf.point(), exclude=[lf.id])
    return 1 + len(between), between


@escalating
def maximal_half_planes(r: Region, radius: int = 1, order_depth: int = 2) -> HalfPlaneTree:
    """Half-planes of the order family up to ``order_depth``.

    Candidate boundaries are the lifts meeting tiles within ``radius`` of the
    witness tile; each candidate's order and parent are exact.
    """
    z = r.point()
    tree = HalfPlaneTree(r, radius, order_depth)
    for lf in lifts_near(r.curve, z, radius):
        n, between = order_of(r, lf)
        if n > order_depth:
            continue
        side = Side.containing(lf, z).complement()
        parent = None
        if between:
            parent = _innermost_next(r, between, lf)
        tree.elements[lf.id] = TreeElement(side, n, parent)
    return tree


def _innermost_next(r: Region, between: List[Lift], lf: Lift) -> LiftId:
    """Of the lifts separating r from lf, the one adjacent to lf."""
    p = lf.point()
    best = None
    for cand in between:
        # the parent is the separating lift with no other one between it and lf
        others = [c for c in between if c.id != cand.id and c.separates(cand.point(), p)]
        if not others:
            best = cand.id
    return best


@escalating
def attracting_maximal(r: Region, att, rep=None) -> Side:
    """The maximal element of r covering the boundary point ``att``.

    Walks from the witness toward ``att``: the first lift crossed bounds the
    maximal element containing the ray's tail.
    """
    z = r.point()
    lf = first_lift_toward(r.curve, z, att)
    if lf is None:
        raise TruncationEscape("ray to the boundary point leaves no lift")
    return Side.containing_boundary(lf, att)


def first_lift_toward(c: CurveClass, z: acb, x, steps: int = 60) -> Optional[Lift]:
    """First lift of c crossed by the geodesic ray from z to boundary value x."""
    grp = c.grp
    # coordinates sending z to i and x to infinity
    far = _ray_point(z, x, 1)
    t = 1
    for _ in range(steps):
        found = separating_lifts(c, z, far)
        if found:
            if len(found) == 1:
                return found[0]
            # the first crossing is the lift not separated from z by another
            for cand in found:
                if not any(o.id != cand.id and o.separates(z, cand.point()) for o in found):
                    return cand
        t += 1
        far = _ray_point(z, x, t)
    return None


def _ray_point(z: acb, x, t: int) -> acb:
    """Point at hyperbolic distance t along the ray from z toward x."""
    from flint import arb
    # map z -> i, x -> oo by w = (u - Re z)/Im z after sending x to oo
    if x is None:
        return acb(z.real, z.imag * arb(t).exp())
    # Mobius sending x to oo: u = -1/(w - x)
    u = -1 / (z - x)
    v = acb(u.real, u.imag * arb(t).exp())
    return x - 1 / v


# --- vertices and the disjointness criterion --------------------------------


class VertexS:
    """A curve-complex vertex of the punctured surface: (curve, region)."""

    def __init__(self, region: Region):
        self.region = region

    @property
    def curve(self) -> CurveClass:
        return self.region.curve

    def key(self):
        return self.region.key()

    def __eq__(self, other):
        return isinstance(other, VertexS) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        return f"VertexS({self.curve}, |fp|={len(self.region.fingerprint)})"

    def serialize(self) -> str:
        return self.region.serialize()


def disjoint_vertices(v1: VertexS, v2: VertexS) -> bool:
    """Distinct vertices spanning an edge of the curve complex.

    Same curve: the regions are adjacent (punctured cylinder).  Different
    curves: disjoint on the closed surface and intersecting regions.
    """
    if v1 == v2:
        return False
    if v1.curve.same_curve(v2.curve):
        return adjacent(v1.region, v2.region)
    if exact_intersection(v1.curve, v2.curve) != 0:
        return False
    return regions_meet(v1.region, v2.region)


class Configuration:
    """The triple (twist lift, region, order family); the family is built lazily."""

    def __init__(self, region: Region, radius: int = 1, order_depth: int = 2, twist: int = 1):
        self.curve = region.curve
        self.region = region
        self.radius = radius
        self.order_depth = order_depth
        self.twist = twist
        self._tree: Optional[HalfPlaneTree] = None

    @property
    def tree(self) -> HalfPlaneTree:
        if self._tree is None:
            self._tree = maximal_half_planes(self.region, self.radius, self.order_depth)
        return self._tree

    def __repr__(self):
        return f"Configuration({self.region})"


def configuration(r: Region, radius: int = 1, order_depth: int = 2, twist: int = 1) -> Configuration:
    return Configuration(r, radius, order_depth, twist)


@escalating
def twist_action(cfg: Configuration, side: Side, power: int = 1) -> Side:
    """Action of the twist lift on an element of the order family.

    Maximal elements are fixed; an element inside maximal Δ moves by the
    primitive element stabilizing ∂Δ, in the configured direction.
    """
    r = cfg.region
    n, between = order_of(r, side.lift)
    if n == 1:
        return side
    outer = between[0]
    x = outer.element
    k = cfg.twist * power
    h = x ** k
    return side.image(h)


@dataclass
class DisjointPairReport:
    regions_meet: bool
    alternation_ok: bool
    violations: List[str]
    unique_containers: bool = True

    @property
    def ok(self) -> bool:
        return self.regions_meet and self.alternation_ok and not self.violations


@escalating
def lemma21_check(v1: VertexS, v2: VertexS, radius: int = 1) -> DisjointPairReport:
    """Check intersecting regions and the maximal-element alternation."""
    if v1.curve.same_curve(v2.curve):
        raise MismatchedHypothesis("the lemma compares two different curves")
    if exact_intersection(v1.curve, v2.curve) != 0:
        raise MismatchedHypothesis("curves intersect on the closed surface")
    violations = []
    meet = regions_meet(v1.region, v2.region)
    if not meet:
        violations.append("regions disjoint")
    t1 = maximal_half_planes(v1.region, radius, 1)
    t2 = maximal_half_planes(v2.region, radius, 1)
    unique = True
    for a, b, name in ((t1, t2, "U1"), (t2, t1, "U2")):
        others = b.maximal
        for d in a.maximal:
            containers = [e for e in others if e.contains_side(d)]
            contained = [e for e in others if d.contains_side(e)]
            if len(containers) > 1:
                unique = False
                violations.append(f"{name}: {d} in several maximal elements")
            if not containers and not contained and _meets_any(d, others):
                violations.append(f"{name}: {d} neither contains nor is contained")
    return DisjointPairReport(meet, not violations, violations, unique)


def _meets_any(d: Side, others: Sequence[Side]) -> bool:
    """Only elements that overlap d matter for the alternation."""
    return any(d.meets(e) for e in others)
