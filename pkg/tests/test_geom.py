from fractions import Fraction

import pytest
from flint import acb, arb, ctx
from hypothesis import given, settings
from hypothesis import strategies as st

from pushcurve import geom
from pushcurve.geom import BoundaryPoint as BP
from pushcurve.geom import Geodesic, HalfPlane, Kind, Linking, Membership, MobiusMap

from conftest import W

M = MobiusMap.from_entries


def test_classify_examples():
    assert geom.classify(M(2, 1, 1, 1)) is Kind.Hyperbolic
    assert geom.classify(M(1, 1, 0, 1)) is Kind.Parabolic
    assert geom.classify(M(0, -1, 1, 0)) is Kind.Elliptic


def test_classify_identity_is_an_error():
    with pytest.raises(ValueError):
        geom.classify(MobiusMap.identity())


def test_compose_identity_and_inverse():
    m = M(2, 1, 1, 1)
    assert geom.overlaps(geom.compose(MobiusMap.identity(), m), m)
    assert geom.contains_identity(geom.compose(m, m.inverse()))


def test_compose_matches_word_product(G):
    a = G.matrix(W("a1"))
    assert geom.overlaps(geom.compose(a, a), G.matrix(W("a1 a1")))


def test_fixed_points_of_diagonal_maps():
    att, rep = geom.fixed_points(M(2, 0, 0, Fraction(1, 2)))
    assert att.exact == "inf" and rep.exact == 0
    att, rep = geom.fixed_points(M(Fraction(1, 2), 0, 0, 2))
    assert att.exact == 0 and rep.exact == "inf"


@geom.escalating
def _self_mapping(m, x, attracting):
    # the map is monotone near x, so map the endpoints of a small interval
    r = arb(2) ** (-40)
    lo, hi = x - r, x + r
    f = m if attracting else m.inverse()
    return all(lo < f.act_boundary(e) < hi for e in (lo, hi))


@pytest.mark.parametrize("bits", [128, 256])
def test_generator_fixed_points_attract(G, bits):
    m = G.matrix(W("a1"))
    old = ctx.prec
    ctx.prec = bits
    try:
        att, rep = geom._fixed_point_values(m)
        assert not att.overlaps(rep)
        assert _self_mapping(m, att, True)
        assert _self_mapping(m, rep, False)
    finally:
        ctx.prec = old


def test_axis_of_diagonal_map():
    g = geom.axis(M(2, 0, 0, Fraction(1, 2)))
    assert g.p.exact == 0 and g.q.exact == "inf"


def test_axis_equivariance_and_powers(G):
    m = G.matrix(W("a1"))
    h = G.matrix(W("b1 a2"))
    conj = geom.compose(geom.compose(h, m), h.inverse())

    @geom.escalating
    def check():
        a1, r1 = geom._fixed_point_values(conj)
        a0, r0 = geom._fixed_point_values(m)
        assert a1.overlaps(h.act_boundary(a0)) and r1.overlaps(h.act_boundary(r0))
        a2, r2 = geom._fixed_point_values(geom.compose(m, m))
        assert a2.overlaps(a0) and r2.overlaps(r0)

    check()


def test_linking_examples():
    assert geom.linking(Geodesic(BP.at(0), BP.infinity()), Geodesic(BP.at(-1), BP.at(1))) is Linking.Linked
    assert geom.linking(Geodesic(BP.at(0), BP.at(1)), Geodesic(BP.at(2), BP.at(3))) is Linking.Unlinked
    assert geom.linking(Geodesic(BP.at(0), BP.at(1)), Geodesic(BP.at(1), BP.at(3))) is Linking.SharedEndpoint


def test_generator_axis_never_crosses_its_conjugates(G):
    from pushcurve.group import enumerate_words

    a = G.matrix(W("a1"))
    base = geom.axis(a)
    for w in enumerate_words(G, 4):
        if len(w) == 0:
            continue
        conj = w * W("a1") * w.inverse()
        if G.equal(conj, W("a1")):
            continue
        assert geom.linking(base, geom.axis(G.matrix(conj))) is not Linking.Linked


def test_in_halfplane_examples():
    g = Geodesic(BP.at(-1), BP.at(1))
    h = HalfPlane.containing(g, BP.infinity())
    assert geom.in_halfplane(BP.infinity(), h) is Membership.Inside
    assert geom.in_halfplane(BP.at(0), h) is Membership.Outside
    assert geom.in_halfplane(BP.at(1), h) is Membership.OnBoundary


def test_lies_above_self_and_nested():
    g = Geodesic(BP.at(-1), BP.at(1))
    big = Geodesic(BP.at(-2), BP.at(2))
    assert geom.lies_above(g, g, BP.infinity())
    assert geom.lies_above(big, g, BP.infinity())
    assert not geom.lies_above(g, big, BP.infinity())


def test_lies_above_refuses_linked():
    with pytest.raises(ValueError):
        geom.lies_above(Geodesic(BP.at(0), BP.infinity()), Geodesic(BP.at(-1), BP.at(1)), BP.at(5))


def test_precision_cap_is_enforced():
    # two distinct rationals closer than the cap can resolve
    x = BP.at(Fraction(1, 3))
    eps = Fraction(1, 2 ** 2000)
    y = BP(lambda: arb(1) / 3 + arb(eps.numerator) / eps.denominator)
    z = BP.at(1)
    with pytest.raises(geom.PrecisionExhausted):
        geom.ccw(x, y, z)


small = st.fractions(min_value=-20, max_value=20, max_denominator=50)


@settings(max_examples=60, deadline=None)
@given(small, small, small)
def test_ccw_is_a_cyclic_order(a, b, c):
    if len({a, b, c}) < 3:
        return
    p, q, r = BP.at(a), BP.at(b), BP.at(c)
    assert geom.ccw(p, q, r) == geom.ccw(q, r, p)
    assert geom.ccw(p, q, r) != geom.ccw(q, p, r)


@settings(max_examples=40, deadline=None)
@given(small, small, small, small)
def test_linking_is_symmetric(a, b, c, d):
    if len({a, b, c, d}) < 4:
        return
    g1 = Geodesic(BP.at(a), BP.at(b))
    g2 = Geodesic(BP.at(c), BP.at(d))
    assert geom.linking(g1, g2) is geom.linking(g2, g1)


@settings(max_examples=40, deadline=None)
@given(st.integers(-3, 3), st.integers(-3, 3), st.integers(-3, 3))
def test_trace_is_conjugation_invariant(i, j, k):
    m = M(2, 1, 1, 1)
    h = M(1, i, 0, 1) @ M(1, 0, j, 1) @ M(1, k, 0, 1)
    conj = geom.compose(geom.compose(h, m), h.inverse())

    @geom.escalating
    def traces():
        return conj.trace().overlaps(m.trace())

    assert traces()


def test_distance_to_self_is_zero():
    @geom.escalating
    def check():
        z = acb(arb(1) / 3, 2)
        return geom.distance_cosh(z, z).overlaps(arb(1))

    assert check()
