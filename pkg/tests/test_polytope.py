from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from shapely.geometry import MultiPoint

from foliation.poly import SparsePoly
from foliation.polytope import (
    Side,
    convex_hull,
    homogeneous_segment_projection,
    minkowski_sum,
    mixed_area,
    newton_polygon,
    newton_polygon_of_points,
    render_ascii,
    support_restriction,
)

x1, x2 = SparsePoly.var(2, 0), SparsePoly.var(2, 1)
points = st.lists(st.tuples(st.integers(-4, 4), st.integers(-4, 4)), min_size=1, max_size=8)


def shapely_area(pts) -> Fraction:
    hull = MultiPoint([tuple(map(float, p)) for p in pts]).convex_hull
    return Fraction(hull.area).limit_denominator(2)


def test_newton_polygon_examples():
    n = newton_polygon(x1**3 + x2**2)
    assert set(n.vertices) == {(3, 0), (0, 2)}
    assert n.slopes() == [Fraction(-2, 3)]
    n = newton_polygon(SparsePoly.const(2, 1))
    assert n.vertices == ((0, 0),) and n.sides == () and n.is_orthant()
    n = newton_polygon(x1**2 * x2 + x1 * x2 + x1**3)
    assert set(n.vertices) == {(1, 1), (3, 0)}


def test_newton_polygon_rejects_zero():
    with pytest.raises(ValueError):
        newton_polygon(SparsePoly.zero(2))


def test_support_restriction_examples():
    f = x1 + x2 + x1 * x2
    assert support_restriction(f, Side.through((1, 0), (0, 1))) == x1 + x2
    assert support_restriction(f, list(f.terms)) == f
    g = x1**3 + x2**2
    assert support_restriction(g, Side.through((3, 0), (0, 2))) == g


def test_mixed_area_examples():
    tri = convex_hull([(0, 0), (1, 0), (0, 1)])
    seg = convex_hull([(0, 0), (1, 1)])
    assert mixed_area(convex_hull([(2, 3)]), tri) == 0
    assert mixed_area(seg, seg) == 0
    assert mixed_area(tri, seg) == 2


def test_projection_examples():
    d = 4
    seg = homogeneous_segment_projection([(0, d, 0), (0, 0, d)], 0)
    assert set(seg.vertices) == {(d, 0), (0, d)}
    assert homogeneous_segment_projection([(0, 0, 0)], 1).vertices == ((0, 0),)
    tri = homogeneous_segment_projection([(3, 1, 0), (0, 3, 1), (1, 0, 3)], 0)
    assert set(tri.vertices) == {(1, 0), (3, 1), (0, 3)}
    assert tri.area() == Fraction(7, 2)


@given(points)
def test_hull_area_matches_shapely(pts):
    assert convex_hull(pts).area() == shapely_area(pts)


@given(points)
def test_hull_is_canonical(pts):
    h = convex_hull(pts)
    assert h.vertices[0] == min(h.vertices)
    assert convex_hull(list(reversed(pts))) == h
    assert all(h.contains(p) for p in pts)


@given(points, points)
def test_minkowski_sum_matches_pairwise_hull(p, q):
    s = minkowski_sum(convex_hull(p), convex_hull(q))
    assert s == convex_hull([(a[0] + b[0], a[1] + b[1]) for a in p for b in q])


@given(points, points)
def test_mixed_area_properties(p, q):
    P, Q = convex_hull(p), convex_hull(q)
    ma = mixed_area(P, Q)
    assert ma == mixed_area(Q, P)
    assert ma >= 0
    assert mixed_area(P, P) == 2 * P.area()
    pq = [(a[0] + b[0], a[1] + b[1]) for a in p for b in q]
    assert ma == shapely_area(pq) - shapely_area(p) - shapely_area(q)


def _parallel_segments(P, Q):
    if not (P.is_segment() and Q.is_segment()):
        return False
    (a, b), (c, d) = P.vertices, Q.vertices
    return (b[0] - a[0]) * (d[1] - c[1]) - (b[1] - a[1]) * (d[0] - c[0]) == 0


@given(points, points)
def test_mixed_area_zero_iff_degenerate(p, q):
    P, Q = convex_hull(p), convex_hull(q)
    assert (mixed_area(P, Q) == 0) == (P.is_point() or Q.is_point() or _parallel_segments(P, Q))


nonneg = st.lists(st.tuples(st.integers(0, 6), st.integers(0, 6)), min_size=1, max_size=8)


@given(nonneg)
def test_newton_slopes_negative_increasing(pts):
    n = newton_polygon_of_points(pts)
    slopes = n.slopes()
    assert all(s < 0 for s in slopes)
    assert all(a < b for a, b in zip(slopes, slopes[1:]))
    for p in pts:
        assert n.contains(p)


@settings(max_examples=50)
@given(st.tuples(st.integers(0, 4), st.integers(0, 4)), nonneg)
def test_newton_polygon_of_monomial_times_polynomial(m, pts):
    f = SparsePoly(2, {p: Fraction(1) for p in pts})
    g = SparsePoly.monomial(m) * f
    shifted = newton_polygon_of_points([(a + m[0], b + m[1]) for a, b in newton_polygon(f).vertices])
    assert newton_polygon(g).vertices == shifted.vertices


@settings(max_examples=40)
@given(nonneg, st.tuples(st.integers(0, 3), st.integers(0, 3)), st.tuples(st.integers(0, 3), st.integers(0, 3)))
def test_newton_polygon_of_product_with_binomial(pts, a, b):
    if a == b:
        return
    f = SparsePoly(2, {p: Fraction(1) for p in pts})
    h = SparsePoly(2, {a: Fraction(1), b: Fraction(-3)})
    sums = [(u[0] + v[0], u[1] + v[1]) for u in newton_polygon(f).vertices for v in (a, b)]
    assert newton_polygon(f * h).vertices == newton_polygon_of_points(sums).vertices


def test_render_is_deterministic():
    pts = [(0, 3), (1, 0), (3, 1), (1, 1)]
    a = render_ascii(pts)
    assert a == render_ascii(list(reversed(pts)))
    assert a.count("o") == 3 and "*" in a
