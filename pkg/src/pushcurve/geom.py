"""Certified hyperbolic-plane kernel on the upper half-plane.

Every numeric quantity is an arb ball computed from a recipe at the working
precision.  Predicates either return a certified answer or raise
:class:`PrecisionExhausted`; the :func:`escalating` decorator retries a whole
computation at doubled precision up to the configured cap.

Boundary points live on RP^1 = R u {oo}; ``None`` stands for infinity in the
low-level helpers and the circular order places it after every real number.
"""
from __future__ import annotations

import enum
import functools
from fractions import Fraction
from typing import Callable, Optional, Sequence

from flint import acb, arb, ctx

START_BITS = 128
PRECISION_CAP = 1024


class PrecisionExhausted(ArithmeticError):
    """A predicate could not be decided at the current precision."""


class NotHyperbolic(ValueError):
    pass


_active = False
_cap = PRECISION_CAP
_last_bits = START_BITS


def set_precision_cap(bits: int) -> None:
    global _cap
    if bits < START_BITS:
        raise ValueError("precision cap below starting precision")
    _cap = bits


def precision_cap() -> int:
    return _cap


def escalating(fn):
    """Run ``fn`` with precision escalation on :class:`PrecisionExhausted`.

    Nested escalating calls run inside the outermost retry loop.
    """

    @functools.wraps(fn)
    def wrapper(*args, **kwargs):
        global _active, _last_bits
        if _active:
            return fn(*args, **kwargs)
        saved = ctx.prec
        _active = True
        try:
            bits = START_BITS
            while True:
                ctx.prec = bits
                try:
                    out = fn(*args, **kwargs)
                    _last_bits = bits
                    return out
                except PrecisionExhausted:
                    if bits >= _cap:
                        raise
                    bits = min(_cap, bits * 2)
        finally:
            _active = False
            ctx.prec = saved

    return wrapper


def last_certified_bits() -> int:
    """Precision at which the most recent outermost escalating call succeeded."""
    return _last_bits


def current_bits() -> int:
    return ctx.prec


class _Lazy:
    """Per-precision memo for values derived from an exact recipe."""

    __slots__ = ("_prec", "_val")

    def __init__(self):
        self._prec = -1
        self._val = None

    def get(self, compute):
        p = ctx.prec
        if self._prec != p:
            self._val = compute()
            self._prec = p
        return self._val


def _to_arb(x) -> arb:
    if isinstance(x, arb):
        return x
    if isinstance(x, Fraction):
        return arb(x.numerator) / arb(x.denominator)
    if isinstance(x, int):
        return arb(x)
    return arb(Fraction(x).limit_denominator(10**12).numerator) / arb(
        Fraction(x).limit_denominator(10**12).denominator
    )


# --- certified comparisons -------------------------------------------------


def sign(x: arb) -> int:
    if x > 0:
        return 1
    if x < 0:
        return -1
    if x.is_zero():
        return 0
    raise PrecisionExhausted("sign undecided")


def lt_inf(x: Optional[arb], y: Optional[arb]) -> bool:
    """Certified x < y on R u {oo} with oo as the largest element."""
    if x is None:
        return False
    if y is None:
        return True
    if x < y:
        return True
    if x >= y:
        return False
    raise PrecisionExhausted("comparison undecided")


def ccw_values(a, b, c) -> bool:
    """True iff a, b, c are in counterclockwise cyclic order on RP^1."""
    n = lt_inf(a, b) + lt_inf(b, c) + lt_inf(c, a)
    if n == 2:
        return True
    if n == 1:
        return False
    raise PrecisionExhausted("points not separated")


def same_value(x, y) -> bool:
    if x is None or y is None:
        return x is None and y is None
    return x == y


# --- Mobius maps -----------------------------------------------------------


class MobiusMap:
    """A determinant-one real 2x2 matrix given by a recipe.

    ``recipe`` is one of ``("exact", entries)``, ``("product", (m1, m2))``,
    ``("inverse", m)`` or ``("fn", callable)``.  ``word``/``group`` record the
    group-word provenance when the map comes from a surface group, and
    ``parabolic`` marks a combinatorial parabolicity certificate.
    """

    __slots__ = ("recipe", "word", "group", "parabolic", "_lazy")

    def __init__(self, recipe, word=None, group=None, parabolic=False):
        self.recipe = recipe
        self.word = word
        self.group = group
        self.parabolic = parabolic
        self._lazy = _Lazy()

    @classmethod
    def from_entries(cls, a, b, c, d) -> "MobiusMap":
        vals = [Fraction(v) for v in (a, b, c, d)]
        det = vals[0] * vals[3] - vals[1] * vals[2]
        if det <= 0:
            raise ValueError("matrix must have positive determinant")
        if det == 1:
            return cls(("exact", tuple(vals)))

        def build():
            s = _to_arb(det).sqrt()
            return tuple(_to_arb(v) / s for v in vals)

        return cls(("fn", build))

    @classmethod
    def identity(cls) -> "MobiusMap":
        return cls(("exact", (Fraction(1), Fraction(0), Fraction(0), Fraction(1))))

    def entries(self):
        return self._lazy.get(self._compute)

    def _compute(self):
        kind, data = self.recipe
        if kind == "exact":
            return tuple(_to_arb(v) for v in data)
        if kind == "fn":
            return data()
        if kind == "inverse":
            a, b, c, d = data.entries()
            return (d, -b, -c, a)
        m1, m2 = data
        a1, b1, c1, d1 = m1.entries()
        a2, b2, c2, d2 = m2.entries()
        return (a1 * a2 + b1 * c2, a1 * b2 + b1 * d2, c1 * a2 + d1 * c2, c1 * b2 + d1 * d2)

    a = property(lambda self: self.entries()[0])
    b = property(lambda self: self.entries()[1])
    c = property(lambda self: self.entries()[2])
    d = property(lambda self: self.entries()[3])

    def trace(self) -> arb:
        e = self.entries()
        return e[0] + e[3]

    def det(self) -> arb:
        a, b, c, d = self.entries()
        return a * d - b * c

    def inverse(self) -> "MobiusMap":
        w = self.word.inverse() if self.word is not None else None
        return MobiusMap(("inverse", self), word=w, group=self.group, parabolic=self.parabolic)

    def __matmul__(self, other: "MobiusMap") -> "MobiusMap":
        return compose(self, other)

    def act_boundary(self, x: Optional[arb]) -> Optional[arb]:
        a, b, c, d = self.entries()
        if x is None:
            if c.is_zero():
                return None
            if c > 0 or c < 0:
                return a / c
            raise PrecisionExhausted("image of infinity undecided")
        den = c * x + d
        if den.is_zero():
            return None
        if den > 0 or den < 0:
            return (a * x + b) / den
        raise PrecisionExhausted("image lands near infinity")

    def act(self, z: acb) -> acb:
        a, b, c, d = self.entries()
        return (a * z + b) / (c * z + d)

    def __repr__(self):
        if self.word is not None:
            return f"MobiusMap({self.word})"
        return f"MobiusMap({self.recipe[0]})"


@escalating
def compose(m1: MobiusMap, m2: MobiusMap) -> MobiusMap:
    """The map z -> m1(m2(z)); provenance words are concatenated."""
    word = None
    group = None
    if m1.word is not None and m2.word is not None and m1.group is m2.group:
        word = m1.word * m2.word
        group = m1.group
    return MobiusMap(("product", (m1, m2)), word=word, group=group)


@escalating
def overlaps(m1: MobiusMap, m2: MobiusMap, sign_free: bool = True) -> bool:
    """Entrywise interval overlap, optionally up to a global sign."""
    e1, e2 = m1.entries(), m2.entries()
    if all(x.overlaps(y) for x, y in zip(e1, e2)):
        return True
    return sign_free and all(x.overlaps(-y) for x, y in zip(e1, e2))


@escalating
def contains_identity(m: MobiusMap) -> bool:
    """The matrix interval contains +I or -I."""
    a, b, c, d = m.entries()
    one, zero = arb(1), arb(0)
    if not (b.contains(zero) and c.contains(zero)):
        return False
    return (a.contains(one) and d.contains(one)) or (a.contains(-one) and d.contains(-one))


class Kind(enum.Enum):
    Hyperbolic = "hyperbolic"
    Parabolic = "parabolic"
    Elliptic = "elliptic"


@escalating
def classify(m: MobiusMap) -> Kind:
    t = m.trace()
    a, b, c, d = m.entries()
    if t.is_exact() and b.is_exact() and c.is_exact():
        if (t == 2 or t == -2) and b.is_zero() and c.is_zero() and (a - d).is_zero():
            raise ValueError("identity has no type")
        if t == 2 or t == -2:
            return Kind.Parabolic
    if abs(t) > 2:
        return Kind.Hyperbolic
    if abs(t) < 2:
        return Kind.Elliptic
    if m.parabolic:
        return Kind.Parabolic
    raise PrecisionExhausted("|trace| - 2 not sign-certified")


# --- boundary points and geodesics ----------------------------------------


class BoundaryPoint:
    """A point of RP^1 given by a recipe returning an arb ball or ``None`` (oo)."""

    __slots__ = ("_fn", "label", "exact", "_lazy")

    def __init__(self, fn: Callable[[], Optional[arb]], label: str = "", exact=None):
        self._fn = fn
        self.label = label
        self.exact = exact
        self._lazy = _Lazy()

    @classmethod
    def at(cls, x) -> "BoundaryPoint":
        if x is None or x == "inf":
            return cls(lambda: None, "oo", exact="inf")
        q = Fraction(x)
        return cls(lambda: _to_arb(q), str(q), exact=q)

    @classmethod
    def infinity(cls) -> "BoundaryPoint":
        return cls.at(None)

    def value(self) -> Optional[arb]:
        return self._lazy.get(self._fn)

    @property
    def is_infinity(self) -> bool:
        return self.exact == "inf"

    def image(self, m: MobiusMap) -> "BoundaryPoint":
        return BoundaryPoint(lambda: m.act_boundary(self.value()), f"{m!r}({self.label})")

    def precision(self) -> int:
        return ctx.prec

    def __repr__(self):
        return f"BoundaryPoint({self.label})"


@escalating
def ccw(p: BoundaryPoint, q: BoundaryPoint, r: BoundaryPoint) -> bool:
    return ccw_values(p.value(), q.value(), r.value())


def _exact_equal(p: BoundaryPoint, q: BoundaryPoint) -> bool:
    return p.exact is not None and p.exact == q.exact


class HPoint:
    """An interior point of the upper half-plane."""

    __slots__ = ("_fn", "label", "_lazy")

    def __init__(self, fn: Callable[[], acb], label: str = ""):
        self._fn = fn
        self.label = label
        self._lazy = _Lazy()

    @classmethod
    def at(cls, x, y) -> "HPoint":
        qx, qy = Fraction(x), Fraction(y)
        if qy <= 0:
            raise ValueError("point must lie in the upper half-plane")
        return cls(lambda: acb(_to_arb(qx), _to_arb(qy)), f"{qx}+{qy}i")

    def value(self) -> acb:
        return self._lazy.get(self._fn)

    def image(self, m: MobiusMap) -> "HPoint":
        return HPoint(lambda: m.act(self.value()), f"{m!r}({self.label})")


class Geodesic:
    """An unoriented geodesic stored with an orientation (``p`` -> ``q``).

    ``element`` optionally names the group element whose axis this is, which
    decides geodesic equality combinatorially.
    """

    __slots__ = ("p", "q", "element", "group")

    def __init__(self, p: BoundaryPoint, q: BoundaryPoint, element=None, group=None):
        self.p = p
        self.q = q
        self.element = element
        self.group = group

    @property
    def endpoints(self):
        return (self.p, self.q)

    def image(self, m: MobiusMap) -> "Geodesic":
        el = None
        if self.element is not None and m.word is not None and m.group is self.group:
            el = (m.word * self.element * m.word.inverse())
        return Geodesic(self.p.image(m), self.q.image(m), el, self.group)

    def reversed(self) -> "Geodesic":
        return Geodesic(self.q, self.p, self.element, self.group)

    def check_disjoint_endpoints(self) -> None:
        p, q = self.p.value(), self.q.value()
        if p is None or q is None:
            if p is None and q is None:
                raise ValueError("degenerate geodesic")
            return
        if p.overlaps(q):
            raise PrecisionExhausted("endpoint intervals overlap")

    def __repr__(self):
        return f"Geodesic({self.p.label}, {self.q.label})"


def same_geodesic(g1: Geodesic, g2: Geodesic) -> Optional[bool]:
    """Combinatorial geodesic identity; ``None`` when provenance is missing."""
    if g1.element is not None and g2.element is not None and g1.group is g2.group and g1.group is not None:
        return g1.group.commute(g1.element, g2.element)
    pair1 = (g1.p.exact, g1.q.exact)
    pair2 = (g2.p.exact, g2.q.exact)
    if None not in pair1 and None not in pair2:
        return set(pair1) == set(pair2)
    return None


class Linking(enum.Enum):
    Linked = "linked"
    Unlinked = "unlinked"
    SharedEndpoint = "shared-endpoint"


def _shared_endpoint(g1: Geodesic, g2: Geodesic) -> bool:
    if same_geodesic(g1, g2):
        return True
    return any(_exact_equal(a, b) for a in g1.endpoints for b in g2.endpoints)


@escalating
def linking(g1: Geodesic, g2: Geodesic) -> Linking:
    if _shared_endpoint(g1, g2):
        return Linking.SharedEndpoint
    p1, q1 = g1.p.value(), g1.q.value()
    p2, q2 = g2.p.value(), g2.q.value()
    s1 = ccw_values(p1, p2, q1)
    s2 = ccw_values(p1, q2, q1)
    return Linking.Linked if s1 != s2 else Linking.Unlinked


def separates_values(e1, e2, x, y) -> bool:
    """Geodesic (e1, e2) separates boundary values x and y."""
    return ccw_values(e1, x, e2) != ccw_values(e1, y, e2)


# --- point / geodesic sides -----------------------------------------------


def point_in_arc_side(z: acb, e1: Optional[arb], e2: Optional[arb]) -> bool:
    """True iff z lies in the open half-plane spanned by the ccw arc e1 -> e2."""
    x, y = z.real, z.imag
    if e1 is None:
        return _lt_strict(x, e2)
    if e2 is None:
        return _lt_strict(e1, x)
    c = (e1 + e2) / 2
    r = (e2 - e1) / 2
    v = (x - c) * (x - c) + y * y - r * r
    if v < 0:
        inside = True
    elif v > 0:
        inside = False
    else:
        raise PrecisionExhausted("point on or near geodesic")
    # the disc between e1 < e2 is the ccw arc e1 -> e2
    return inside if lt_inf(e1, e2) else not inside


def _lt_strict(x: arb, y: arb) -> bool:
    if x < y:
        return True
    if x > y:
        return False
    raise PrecisionExhausted("point on or near vertical geodesic")


def side_of(z: acb, g: Geodesic) -> bool:
    """True iff z is left of g oriented p -> q (the ccw arc q -> p side)."""
    return point_in_arc_side(z, g.q.value(), g.p.value())


def distance_cosh(z: acb, w: acb) -> arb:
    """cosh of the hyperbolic distance between two interior points."""
    dx = z.real - w.real
    dy = z.imag - w.imag
    return 1 + (dx * dx + dy * dy) / (2 * z.imag * w.imag)


# --- fixed points and axes -------------------------------------------------


def _fixed_point_values(m: MobiusMap):
    a, b, c, d = m.entries()
    t = a + d
    if c.is_zero():
        # upper triangular: fixed points oo and b / (d - a)
        fin = b / (d - a)
        if abs(a) > abs(d):
            return None, fin
        if abs(a) < abs(d):
            return fin, None
        raise PrecisionExhausted("diagonal magnitudes undecided")
    if not (c > 0 or c < 0):
        raise PrecisionExhausted("lower-left entry not sign-certified")
    s = (t * t - 4).sqrt()
    plus = (a - d + s) / (2 * c)
    minus = (a - d - s) / (2 * c)
    if t > 0:
        return plus, minus
    if t < 0:
        return minus, plus
    raise PrecisionExhausted("trace sign undecided")


def fixed_points(m: MobiusMap):
    """(attracting, repelling) boundary points of a hyperbolic map."""
    if classify(m) is not Kind.Hyperbolic:
        raise NotHyperbolic(repr(m))
    lazy = _Lazy()

    def both():
        return lazy.get(lambda: _fixed_point_values(m))

    att = BoundaryPoint(lambda: both()[0], f"A[{m!r}]")
    rep = BoundaryPoint(lambda: both()[1], f"B[{m!r}]")
    a, b, c, d = m.recipe[1] if m.recipe[0] == "exact" else (None,) * 4
    if a is not None and c == 0:
        fin = b / (d - a) if d != a else None
        if abs(a) > abs(d):
            att.exact, rep.exact = "inf", fin
        else:
            att.exact, rep.exact = fin, "inf"
    return att, rep


def axis(m: MobiusMap) -> Geodesic:
    """Axis oriented from the repelling to the attracting fixed point."""
    att, rep = fixed_points(m)
    return Geodesic(rep, att, m.word, m.group)


# --- half-planes and arcs --------------------------------------------------


class Membership(enum.Enum):
    Inside = "inside"
    Outside = "outside"
    OnBoundary = "on-boundary"


class HalfPlane:
    """The half-plane whose boundary arc is the open ccw arc ``start -> end``."""

    __slots__ = ("boundary", "start", "end")

    def __init__(self, boundary: Geodesic, start: BoundaryPoint, end: BoundaryPoint):
        self.boundary = boundary
        self.start = start
        self.end = end

    @classmethod
    def containing(cls, g: Geodesic, ref: BoundaryPoint) -> "HalfPlane":
        """The side of ``g`` whose arc contains ``ref``."""
        if ccw(g.p, ref, g.q):
            return cls(g, g.p, g.q)
        return cls(g, g.q, g.p)

    @classmethod
    def containing_point(cls, g: Geodesic, z: acb) -> "HalfPlane":
        if point_in_arc_side(z, g.p.value(), g.q.value()):
            return cls(g, g.p, g.q)
        return cls(g, g.q, g.p)

    def complement(self) -> "HalfPlane":
        return HalfPlane(self.boundary, self.end, self.start)

    def contains_point(self, z: acb) -> bool:
        return point_in_arc_side(z, self.start.value(), self.end.value())

    def arc(self) -> "BoundaryArc":
        return BoundaryArc(self.start, self.end, ccw_from_start=True)

    def image(self, m: MobiusMap) -> "HalfPlane":
        # orientation-preserving maps keep the ccw order of the arc
        return HalfPlane(self.boundary.image(m), self.start.image(m), self.end.image(m))

    def __repr__(self):
        return f"HalfPlane({self.start.label} -> {self.end.label})"


class BoundaryArc:
    """An arc of RP^1 between X and Y.

    With ``ccw_from_start`` the arc runs counterclockwise from X to Y.  Otherwise
    ``via`` lists interior points fixing the arc, or the selector is the
    smaller of the two arcs in the disc model.
    """

    def __init__(self, x: BoundaryPoint, y: BoundaryPoint, via: Sequence[BoundaryPoint] = (),
                 ccw_from_start: bool = False):
        self.x = x
        self.y = y
        self.via = tuple(via)
        self.ccw_from_start = ccw_from_start

    def _oriented(self):
        if self.ccw_from_start:
            return self.x, self.y
        if self.via:
            if ccw(self.x, self.via[0], self.y):
                start, end = self.x, self.y
            else:
                start, end = self.y, self.x
            for v in self.via[1:]:
                if not ccw(start, v, end):
                    raise ValueError("via points do not lie on a common arc")
            return start, end
        lx, ly = _disc_angle(self.x.value()), _disc_angle(self.y.value())
        span = (ly - lx) % _two_pi()
        if span < arb.pi():
            return self.x, self.y
        if span > arb.pi():
            return self.y, self.x
        raise ValueError("antipodal endpoints: smaller arc undefined")

    def contains(self, p: BoundaryPoint) -> Membership:
        if _exact_equal(p, self.x) or _exact_equal(p, self.y):
            return Membership.OnBoundary
        s, e = self._oriented()
        return Membership.Inside if ccw(s, p, e) else Membership.Outside

    def contains_arc(self, other: "BoundaryArc") -> bool:
        """Closed containment of ``other`` in this arc."""
        s, e = self._oriented()
        s2, e2 = other._oriented()
        ok_s = _exact_equal(s, s2) or ccw(s, s2, e)
        ok_e = _exact_equal(e, e2) or ccw(s, e2, e)
        if not (ok_s and ok_e):
            return False
        # both ends inside; rule out the complementary wrap-around
        if _exact_equal(s, s2) or _exact_equal(e, e2):
            return True
        return ccw_values(s.value(), s2.value(), e2.value()) and ccw_values(s2.value(), e2.value(), e.value())


def _two_pi() -> arb:
    return 2 * arb.pi()


def _disc_angle(x: Optional[arb]) -> arb:
    """Angle of the Cayley image of a boundary point, in [0, 2pi)."""
    if x is None:
        return arb(0)
    # (x - i)/(x + i) = e^{i theta}, theta = 2 * atan2(-1, x) mod 2pi
    th = 2 * arb.atan2(arb(-1), x)
    return th + _two_pi() if th < 0 else th


@escalating
def in_halfplane(p: BoundaryPoint, h: HalfPlane) -> Membership:
    if _exact_equal(p, h.start) or _exact_equal(p, h.end):
        return Membership.OnBoundary
    return Membership.Inside if ccw(h.start, p, h.end) else Membership.Outside


@escalating
def lies_above(g1: Geodesic, g2: Geodesic, ref: BoundaryPoint) -> bool:
    """g1 lies in the closed half-plane bounded by g2 that contains ``ref``."""
    if same_geodesic(g1, g2):
        return True
    if linking(g1, g2) is Linking.Linked:
        raise ValueError("lies_above needs unlinked geodesics")
    side = HalfPlane.containing(g2, ref)
    for e in g1.endpoints:
        if _exact_equal(e, g2.p) or _exact_equal(e, g2.q):
            continue
        if not ccw(side.start, e, side.end):
            return False
    return True


@escalating
def halfplane_contains(outer: HalfPlane, inner: HalfPlane) -> bool:
    """Closed containment of half-planes via their boundary arcs."""
    return outer.arc().contains_arc(inner.arc())


@escalating
def halfplanes_meet(h1: HalfPlane, h2: HalfPlane) -> bool:
    """Open half-planes intersect."""
    if linking(h1.boundary, h2.boundary) is Linking.Linked:
        return True
    if same_geodesic(h1.boundary, h2.boundary):
        # same boundary: meet iff same side
        return _exact_equal(h1.start, h2.start) or (
            h1.start.value() is not None and h2.start.value() is not None
            and h1.start.value().overlaps(h2.start.value())
        )
    # disjoint boundaries: they miss iff each lies in the other's complement
    c1 = h1.complement()
    return not halfplane_contains(c1, h2)


@escalating
def geodesic_meets_halfplane(g: Geodesic, h: HalfPlane) -> bool:
    """Geodesic g has points in the open half-plane h."""
    if linking(g, h.boundary) is Linking.Linked:
        return True
    if same_geodesic(g, h.boundary):
        return False
    return ccw(h.start, g.p, h.end) or ccw(h.start, g.q, h.end)


# --- axis coordinates ------------------------------------------------------


def normalizer(rep: Optional[arb], att: Optional[arb]):
    """Entries of a map sending ``rep`` to 0 and ``att`` to infinity."""
    one, zero = arb(1), arb(0)
    if att is None:
        return (one, -rep, zero, one)
    if rep is None:
        return (zero, -one, one, -att)
    diff = rep - att
    if diff > 0:
        s = diff.sqrt()
        return (one / s, -rep / s, one / s, -att / s)
    if diff < 0:
        s = (-diff).sqrt()
        return (-one / s, rep / s, one / s, -att / s)
    raise PrecisionExhausted("axis endpoints not separated")


def _apply(e, z):
    a, b, c, d = e
    return (a * z + b) / (c * z + d)


def _apply_inverse(e, z):
    a, b, c, d = e
    return (d * z - b) / (-c * z + a)


def apply_boundary(e, x: Optional[arb]) -> Optional[arb]:
    a, b, c, d = e
    if x is None:
        if c.is_zero():
            return None
        if c > 0 or c < 0:
            return a / c
        raise PrecisionExhausted("image of infinity undecided")
    den = c * x + d
    if den.is_zero():
        return None
    if den > 0 or den < 0:
        return (a * x + b) / den
    raise PrecisionExhausted("boundary image near infinity")


def foot(rep, att, z: acb) -> acb:
    """Foot of the perpendicular from z to the geodesic (rep, att)."""
    e = normalizer(rep, att)
    w = _apply(e, z)
    return _apply_inverse(e, acb(0, abs(w)))


def point_on_axis(rep, att, height: arb) -> acb:
    e = normalizer(rep, att)
    return _apply_inverse(e, acb(0, height))


def axis_height(rep, att, z: acb) -> arb:
    """Height coordinate along the axis of the foot of z (increasing toward att)."""
    e = normalizer(rep, att)
    return abs(_apply(e, z))


def crossing_height(rep, att, e1, e2) -> arb:
    """Height along the axis (rep, att) where the linked geodesic (e1, e2) crosses."""
    e = normalizer(rep, att)
    y1, y2 = apply_boundary(e, e1), apply_boundary(e, e2)
    if y1 is None or y2 is None:
        raise PrecisionExhausted("crossing at an axis endpoint")
    prod = -(y1 * y2)
    if not prod > 0:
        raise PrecisionExhausted("geodesics not certified linked")
    return prod.sqrt()
