"""Curve-layer tests: equation checks, counts vs Weil/zeta, Frobenius maps."""

import random

import pytest

from frobfix.curve import (
    Curve,
    curve_count_from_lpoly,
    jacobian_order_from_lpoly,
    lpolynomial,
    weil_interval_ok_curve,
    weil_interval_ok_jacobian,
)
from frobfix.errors import CurveParameterError, NotOnCurveError
from frobfix.gf2 import default_field, embed


def laszlo_curve():
    f4 = default_field(2)
    return Curve(f4, f4.gen())  # t = w over GF(4)


def test_parameter_validation():
    f4 = default_field(2)
    with pytest.raises(CurveParameterError):
        Curve(f4, f4.zero())
    with pytest.raises(CurveParameterError):
        Curve(f4, f4.one())
    Curve(f4, f4.gen())  # fine


def test_on_curve_examples():
    c = laszlo_curve()
    f4 = c.field
    assert c.contains(c.infinity())
    p = c.point(f4.zero(), f4.zero())  # f(0) = 0
    assert c.contains(p)
    with pytest.raises(NotOnCurveError):
        c.point(f4.zero(), f4.one())  # 1 + 0 != 0


def test_point_count_gf4_frozen():
    # oracle (by-hand substitution over all four x values): 2 affine + infinity
    c = laszlo_curve()
    assert c.count_points(c.field) == 3
    assert len(c.points_over(c.field)) == 3


def test_counts_satisfy_weil():
    c = laszlo_curve()
    for deg, q in ((2, 4), (4, 16), (6, 64)):
        n = c.count_points(default_field(deg))
        assert weil_interval_ok_curve(n, q)


def test_lpolynomial_self_check():
    c = laszlo_curve()
    s1, s2 = lpolynomial(c)
    q = 4
    # the L-polynomial must reproduce the counts it was built from
    assert curve_count_from_lpoly(s1, s2, q, 1) == c.count_points(default_field(2))
    assert curve_count_from_lpoly(s1, s2, q, 2) == c.count_points(default_field(4))
    # functional-equation self-check: it must also predict the degree-3 count
    assert curve_count_from_lpoly(s1, s2, q, 3) == c.count_points(default_field(6))
    # and jacobian orders stay in the Weil interval
    for j in (1, 2, 3):
        nj = jacobian_order_from_lpoly(s1, s2, q, j)
        assert weil_interval_ok_jacobian(nj, q ** j)


def test_lpolynomial_all_t_gf16():
    f16 = default_field(4)
    for tm in range(2, 16):
        c = Curve(f16, f16.element(tm))
        s1, s2 = lpolynomial(c)
        assert curve_count_from_lpoly(s1, s2, 16, 3) == c.count_points(default_field(12))


def test_involution_examples():
    c = laszlo_curve()
    f4 = c.field
    p = c.point(f4.zero(), f4.zero())
    assert p.hyperelliptic_involution() == p  # h(0) = 0: Weierstrass point
    f16 = default_field(4)
    pts = c.points_over(f16)
    for q in pts:
        assert q.hyperelliptic_involution().hyperelliptic_involution() == q
    fixed = [q for q in pts if q.hyperelliptic_involution() == q]
    # exactly the Weierstrass points, over x in {0, 1, inf}
    assert len(fixed) == 3
    xs = sorted((q.x.mask if not q.is_infinity() else -1) for q in fixed)
    assert xs == [-1, 0, 1]


def test_branch_points():
    c = laszlo_curve()
    bp = c.branch_points()
    assert len(bp) == 3
    masks = {(x.mask if x is not None else "inf") for x in bp}
    assert masks == {0, 1, "inf"}
    assert c.is_ordinary()
    # stability under x -> x+1 and x -> 1/x on {0, 1, inf}
    finite = [x for x in bp if x is not None]
    shifted = {(x + c.field.one()).mask for x in finite} | {"inf"}
    assert shifted == masks


def test_is_ordinary_all_t():
    f16 = default_field(4)
    for tm in range(2, 16):
        assert Curve(f16, f16.element(tm)).is_ordinary()


def test_relative_frobenius_examples():
    c = laszlo_curve()
    f16 = default_field(4)
    assert c.infinity().relative_frobenius().is_infinity()
    for p in c.points_over(f16):
        img = p.relative_frobenius()  # contains() is asserted inside
        assert img.curve.n == 1
        back = img.frobenius_preimage()
        assert back == p
    # composing d = 2 twists equals the coordinate-wise q-power
    for p in c.points_over(f16):
        img = p.relative_frobenius().relative_frobenius()
        assert img.curve.same_model(c)
        if not p.is_infinity():
            assert img.x == p.x ** 4 and img.y == p.y ** 4


def test_equation_identity_under_frobenius():
    # X(n+1)-equation(x^2, y^2) == (X(n)-equation(x, y))^2 for all (x, y),
    # on and off the curve.
    c = laszlo_curve()
    f16 = default_field(4)
    h0, f0 = c.equation_polys(f16)
    c1 = c.next_twist()
    h1, f1 = c1.equation_polys(f16)
    for xm in range(16):
        for ym in range(0, 16, 3):
            x, y = f16.element(xm), f16.element(ym)
            lhs = (y * y) ** 2 + h1.evaluate(x * x) * (y * y) + f1.evaluate(x * x)
            e0 = y * y + h0.evaluate(x) * y + f0.evaluate(x)
            assert lhs == e0 * e0


def test_involution_commutes_with_frobenius():
    c = laszlo_curve()
    f16 = default_field(4)
    for p in c.points_over(f16):
        a = p.hyperelliptic_involution().relative_frobenius()
        b = p.relative_frobenius().hyperelliptic_involution()
        assert a == b


def test_preimage_of_gf16_point_stays_gf16():
    c = laszlo_curve()
    c1 = c.next_twist()
    f16 = default_field(4)
    for p in c1.points_over(f16):
        pre = p.frobenius_preimage()
        assert pre.field == f16 or pre.is_infinity()


def test_weierstrass_points():
    c = laszlo_curve()
    wpts = c.weierstrass_points()
    assert len(wpts) == 2
    assert {p.x.mask for p in wpts} == {0, 1}
    for p in wpts:
        assert p.is_weierstrass()
        assert c.contains(p)


def test_lift_and_retag():
    c = laszlo_curve()
    f4, f16 = c.field, default_field(4)
    p = c.point(f4.zero(), f4.zero())
    q = p.lift(f16)
    assert q.field == f16 and c.contains(q)
    c2 = c.twist(2)
    assert c.same_model(c2)
    r = p.retag(c2)
    assert r.curve.n == 2


def test_random_extension_points_on_curve():
    c = laszlo_curve()
    rng = random.Random(21)
    f256 = default_field(8)
    pts = c.points_over(f256)
    n = len(pts)
    assert weil_interval_ok_curve(n, 256)
    for p in rng.sample(pts, 20):
        assert c.contains(p)
