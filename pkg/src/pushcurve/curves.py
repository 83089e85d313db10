"""Closed geodesics on the closed surface and their lift families.

A curve is a conjugacy class of the closed group.  A lift of the curve is the
axis of a conjugate ``h r h^-1`` of the primitive root ``r``; it is named by the
shortlex-smaller geometric normal form of that element and its inverse, which
decides lift identity exactly.

Exact counts (intersection numbers, simplicity) use the lifts met by a chain of
tiles: any geodesic separating two points crosses every tile on a tile path
between them, and the lifts meeting the closed fundamental polygon form a
finite list computed once per curve.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from flint import acb, arb

from . import geom
from .geom import PrecisionExhausted, _Lazy, escalating
from .group import (
    ConjugacyClass,
    GroupWord,
    Kind,
    SurfaceGroup,
    TWIST,
    conjugacy_class,
    enumerate_words,
    free_reduce,
    letter_key,
)


class NotSimpleError(ValueError):
    pass


def shortlex(letters: Sequence[int]):
    return (len(letters), tuple(letter_key(x) for x in letters))


def apply_word_boundary(grp: SurfaceGroup, letters: Sequence[int], x):
    for s in reversed(letters):
        x = grp.gens[s].act_boundary(x)
    return x


def apply_word_point(grp: SurfaceGroup, letters: Sequence[int], z: acb) -> acb:
    for s in reversed(letters):
        z = grp.gens[s].act(z)
    return z


class CurveClass:
    """Oriented closed geodesic given by a word; lifts use its primitive root."""

    def __init__(self, word: GroupWord, grp: SurfaceGroup):
        if grp.kind is not Kind.Closed:
            raise ValueError("curves live on the closed surface")
        self.grp = grp
        self.cls: ConjugacyClass = conjugacy_class(word, grp)
        self.word = word
        # keep the caller's orientation for the root
        cyc = grp.cyclic_dehn_reduce(word.letters)
        per = _period(cyc)
        self.root = GroupWord(cyc[:per])
        self.power = len(cyc) // per
        self._fix = _Lazy()
        self._polygon_lifts: Optional[List["Lift"]] = None
        self._ids: Dict[Tuple[int, ...], Tuple[int, ...]] = {}
        self._key = None
        self.simple_depth: Optional[int] = None

    @property
    def primitive(self) -> bool:
        return self.power == 1

    def __repr__(self):
        return f"CurveClass({self.root})"

    def __str__(self):
        return str(self.root)

    # base-lift geometry ----------------------------------------------------

    def fixed_values(self):
        """(repelling, attracting) fixed-point values of the root."""

        def compute():
            m = self.grp.matrix(self.root)
            return geom._fixed_point_values(m)[::-1]

        return self._fix.get(compute)

    def lift(self, conj: Sequence[int]) -> "Lift":
        return Lift(self, GroupWord(conj))

    def base_lift(self) -> "Lift":
        return Lift(self, GroupWord())

    def element(self, conj: GroupWord) -> GroupWord:
        return conj * self.root * conj.inverse()

    def lift_id(self, conj: GroupWord) -> Tuple[int, ...]:
        x = self.element(conj)
        got = self._ids.get(x.letters)
        if got is None:
            a = self.grp.nf(x)
            b = self.grp.nf(x.inverse())
            got = min(a, b, key=shortlex)
            self._ids[x.letters] = got
        return got

    def base_point(self) -> acb:
        """Foot of the perpendicular from the basepoint O to the base lift."""
        rep, att = self.fixed_values()
        return geom.foot(rep, att, self.grp.basepoint_value())

    # lifts meeting the polygon --------------------------------------------

    @escalating
    def polygon_lifts(self) -> List["Lift"]:
        if self._polygon_lifts is None:
            self._polygon_lifts = _lifts_meeting_polygon(self)
        return self._polygon_lifts

    @property
    def key(self) -> Tuple[int, ...]:
        """Canonical name of the unoriented curve."""
        if self._key is None:
            ids = [lf.id for lf in self.polygon_lifts()]
            self._key = min(ids, key=shortlex)
        return self._key

    def same_curve(self, other: "CurveClass") -> bool:
        return self.key == other.key


def _period(w):
    n = len(w)
    for d in range(1, n + 1):
        if n % d == 0 and w[:d] * (n // d) == w:
            return d
    return n


class Lift:
    """The geodesic ``conj(axis(root))`` of a curve."""

    __slots__ = ("curve", "conj", "_ends")

    def __init__(self, curve: CurveClass, conj: GroupWord):
        self.curve = curve
        self.conj = conj
        self._ends = _Lazy()

    @property
    def id(self) -> Tuple[int, ...]:
        return self.curve.lift_id(self.conj)

    @property
    def element(self) -> GroupWord:
        return self.curve.element(self.conj)

    def endpoints(self):
        """(repelling, attracting) boundary values of the lift."""

        def compute():
            rep, att = self.curve.fixed_values()
            grp, c = self.curve.grp, self.conj.letters
            return apply_word_boundary(grp, c, rep), apply_word_boundary(grp, c, att)

        return self._ends.get(compute)

    def side(self, z: acb) -> bool:
        """True iff z lies left of the lift oriented rep -> att."""
        rep, att = self.endpoints()
        return geom.point_in_arc_side(z, att, rep)

    def separates(self, z1: acb, z2: acb) -> bool:
        return self.side(z1) != self.side(z2)

    def boundary_side_of(self, x) -> bool:
        """True iff boundary value x is on the left of the lift."""
        rep, att = self.endpoints()
        return geom.ccw_values(att, x, rep)

    def point(self) -> acb:
        """A generic point on the lift: image of the base point."""
        return apply_word_point(self.curve.grp, self.conj.letters, self.curve.base_point())

    def translate(self, h: Sequence[int]) -> "Lift":
        return Lift(self.curve, GroupWord(tuple(h) + self.conj.letters))

    def geodesic(self) -> geom.Geodesic:
        lf = self

        def rep():
            return lf.endpoints()[0]

        def att():
            return lf.endpoints()[1]

        return geom.Geodesic(geom.BoundaryPoint(rep, f"rep[{self.conj}]"),
                             geom.BoundaryPoint(att, f"att[{self.conj}]"),
                             self.element, self.curve.grp)

    def linked(self, other: "Lift") -> bool:
        if self.id == other.id:
            return False
        r1, a1 = self.endpoints()
        r2, a2 = other.endpoints()
        return geom.ccw_values(r1, r2, a1) != geom.ccw_values(r1, a2, a1)

    def __repr__(self):
        return f"Lift({self.curve.root} ^ {self.conj})"


# --- polygon geometry -----------------------------------------------------


def polygon_vertices(grp: SurfaceGroup) -> List[acb]:
    n = grp.n_sides
    s, c = (arb.pi() / n).sin_cos()
    cot2 = (c / s) ** 2
    expR = cot2 + (cot2 * cot2 - 1).sqrt()
    top = acb(0, expR)
    out = []
    for j in range(n):
        ang = arb.pi() * 2 * j / n + arb(TWIST.numerator) / TWIST.denominator
        sn, cs = (ang / 2).sin_cos()
        # rotation about i by 2*pi*j/n
        out.append((cs * top + sn) / (-sn * top + cs))
    return out


def _tile_misses(grp: SurfaceGroup, verts, u: acb, v: acb, e1, e2) -> bool:
    """Certified: the geodesic segment [u, v] on (e1, e2) misses the polygon."""
    for k in range(grp.n_sides):
        try:
            if grp.outside_side(u, k) and grp.outside_side(v, k):
                return True
        except PrecisionExhausted:
            continue
    try:
        sides = {geom.point_in_arc_side(w, e1, e2) for w in verts}
    except PrecisionExhausted:
        return False
    return len(sides) == 1


def tiles_meeting_segment(grp: SurfaceGroup, z: acb, w: acb, e1, e2, cap: int = 20000):
    """Group elements t with t*P meeting the segment [z, w] of geodesic (e1, e2).

    The list is a certified superset: a tile is dropped only when it provably
    misses the segment.
    """
    verts = polygon_vertices(grp)
    t0 = grp.reduce_point(z)[0]
    seen = {grp.nf(GroupWord(t0))}
    out = [GroupWord(t0)]
    queue = deque([GroupWord(t0)])
    while queue:
        t = queue.popleft()
        for k in range(grp.n_sides):
            nb = GroupWord(t.letters + (grp.side_letter[k],))
            key = grp.nf(nb)
            if key in seen:
                continue
            seen.add(key)
            inv = nb.inverse().letters
            u = apply_word_point(grp, inv, z)
            v = apply_word_point(grp, inv, w)
            f1 = apply_word_boundary(grp, inv, e1)
            f2 = apply_word_boundary(grp, inv, e2)
            if _tile_misses(grp, verts, u, v, f1, f2):
                continue
            nb = GroupWord(key)
            out.append(nb)
            queue.append(nb)
            if len(out) > cap:
                raise RuntimeError("tile flood exceeded cap")
    return out


def _lifts_meeting_polygon(c: CurveClass) -> List[Lift]:
    grp = c.grp
    rep, att = c.fixed_values()
    z = c.base_point()
    w = grp.apply(c.root, z)
    tiles = tiles_meeting_segment(grp, z, w, rep, att)
    out: Dict[Tuple[int, ...], Lift] = {}
    for t in tiles:
        lf = Lift(c, t.inverse())
        out.setdefault(lf.id, lf)
    return [out[k] for k in sorted(out, key=shortlex)]


def tile_chain(grp: SurfaceGroup, t1: Sequence[int], t2: Sequence[int]) -> List[Tuple[int, ...]]:
    """Adjacent tiles joining t1*P to t2*P."""
    u = free_reduce(tuple(-x for x in reversed(t1)) + tuple(t2))
    return [free_reduce(tuple(t1) + u[:k]) for k in range(len(u) + 1)]


def separating_lifts(c: CurveClass, z1: acb, z2: acb, exclude: Iterable[Tuple[int, ...]] = ()) -> List[Lift]:
    """All lifts of ``c`` separating the points z1 and z2, deduplicated.

    Lifts named in ``exclude`` (geodesics a point lies on) are skipped.
    """
    grp = c.grp
    excl = set(exclude)
    t1 = grp.reduce_point(z1)[0]
    t2 = grp.reduce_point(z2)[0]
    found: Dict[Tuple[int, ...], Lift] = {}
    base = c.polygon_lifts()
    for t in tile_chain(grp, t1, t2):
        for lf in base:
            cand = lf.translate(t)
            if excl:
                if cand.id in excl:
                    continue
            if cand.separates(z1, z2):
                found.setdefault(cand.id, cand)
    return [found[k] for k in sorted(found, key=shortlex)]


def lifts_near(c: CurveClass, z: acb, radius: int) -> List[Lift]:
    """Lifts meeting the tiles within Cayley distance ``radius`` of z's tile."""
    grp = c.grp
    t0 = GroupWord(grp.reduce_point(z)[0])
    tiles = {grp.nf(t0): t0}
    frontier = [t0]
    for _ in range(radius):
        nxt = []
        for t in frontier:
            for s in grp.side_letter:
                nb = t * GroupWord((s,))
                key = grp.nf(nb)
                if key not in tiles:
                    tiles[key] = GroupWord(key)
                    nxt.append(tiles[key])
        frontier = nxt
    found: Dict[Tuple[int, ...], Lift] = {}
    for key in sorted(tiles, key=shortlex):
        for lf in c.polygon_lifts():
            cand = lf.translate(key)
            found.setdefault(cand.id, cand)
    return [found[k] for k in sorted(found, key=shortlex)]


# --- exact intersection and simplicity -------------------------------------


@escalating
def crossing_lifts(c1: CurveClass, c2: CurveClass) -> List[Lift]:
    """Lifts of c2 crossing a fundamental segment of the base lift of c1."""
    z = c1.base_point()
    w = c1.grp.apply(c1.root, z)
    excl = [c1.base_lift().id] if c1.same_curve(c2) else []
    return separating_lifts(c2, z, w, exclude=excl)


def exact_intersection(c1: CurveClass, c2: CurveClass) -> int:
    """Geometric intersection number of two primitive closed geodesics."""
    if c1.same_curve(c2):
        return len(crossing_lifts(c1, c2)) // 2
    return len(crossing_lifts(c1, c2))


def exact_simple(c: CurveClass) -> bool:
    return not crossing_lifts(c, c)


@dataclass
class LiftSet:
    curve: CurveClass
    depth: int
    lifts: List[Lift]
    base_index: int = 0


@escalating
def lifts(c: CurveClass, grp: SurfaceGroup, depth: int) -> LiftSet:
    """Lifts ``h(axis(root))`` for all elements h of length <= depth."""
    found: Dict[Tuple[int, ...], Lift] = {}
    for h in enumerate_words(grp, depth):
        lf = Lift(c, h)
        found.setdefault(lf.id, lf)
    base_id = c.base_lift().id
    keys = sorted(found, key=shortlex)
    return LiftSet(c, depth, [found[k] for k in keys], keys.index(base_id))


@dataclass
class SimpleUpTo:
    depth: int


@dataclass
class NotSimple:
    pair: Tuple[Lift, Lift]


@escalating
def is_simple(c: CurveClass, grp: SurfaceGroup, depth: int):
    ls = lifts(c, grp, depth)
    base = ls.lifts[ls.base_index]
    for lf in ls.lifts:
        if lf.linked(base):
            return NotSimple((base, lf))
    c.simple_depth = depth
    return SimpleUpTo(depth)


@dataclass
class IntersectionResult:
    count: int
    exact: bool
    depth: int
    counts_by_depth: List[int] = field(default_factory=list)
    tile_count: Optional[int] = None


@escalating
def linked_coset_count(c1: CurveClass, c2: CurveClass, depth: int) -> int:
    """Lifts of c2 from conjugators of length <= depth crossing [p, r1 p)."""
    z = c1.base_point()
    w = c1.grp.apply(c1.root, z)
    same = c1.same_curve(c2)
    base_id = c1.base_lift().id
    seen = set()
    for h in enumerate_words(c1.grp, depth):
        lf = Lift(c2, h)
        if same and lf.id == base_id:
            continue
        if lf.separates(z, w):
            seen.add(lf.id)
    return len(seen) // 2 if same else len(seen)


def intersection_number(c1: CurveClass, c2: CurveClass, grp: SurfaceGroup, depth: int) -> IntersectionResult:
    """Linked-coset count with the two-consecutive-depth stability rule.

    The count is reported exact when the depths ``depth-1`` and ``depth``
    agree; the tile-chain count is attached as an independent check.
    """
    counts = [linked_coset_count(c1, c2, d) for d in range(max(0, depth - 1), depth + 1)]
    stable = len(counts) == 2 and counts[0] == counts[1]
    tile = exact_intersection(c1, c2)
    if stable and tile != counts[-1]:
        raise RuntimeError(f"intersection count disagreement: coset {counts[-1]} vs tile {tile}")
    return IntersectionResult(counts[-1], stable, depth, counts, tile)


@dataclass
class FillingCertificate:
    curve: CurveClass
    cap: int
    checked: List[Tuple[str, int]]
    bounded: bool = True


@dataclass
class NotFilling:
    witness: CurveClass


def simple_curves(grp: SurfaceGroup, cap: int) -> List[CurveClass]:
    """Primitive simple closed geodesics with a representative of length <= cap."""
    out: Dict[Tuple[int, ...], CurveClass] = {}
    reps = set()
    for w in enumerate_words(grp, cap):
        if not w.letters:
            continue
        cyc = grp.cyclic_dehn_reduce(w.letters)
        if len(cyc) != len(w.letters) or _period(cyc) != len(cyc):
            continue
        c = CurveClass(w, grp)
        if c.cls.representative in reps:
            continue
        reps.add(c.cls.representative)
        if c.key in out:
            continue
        if exact_simple(c):
            out[c.key] = c
    return [out[k] for k in sorted(out, key=shortlex)]


def is_filling(c: CurveClass, grp: SurfaceGroup, depth: int = 0, simple_curve_length_cap: int = 4,
               pool: Optional[List[CurveClass]] = None):
    """Bounded filling check: c meets every simple curve up to the length cap."""
    checked = []
    for s in pool if pool is not None else simple_curves(grp, simple_curve_length_cap):
        if c.same_curve(s):
            continue
        n = exact_intersection(c, s)
        if n == 0:
            return NotFilling(s)
        checked.append((str(s), n))
    return FillingCertificate(c, simple_curve_length_cap, checked)
