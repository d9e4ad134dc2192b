from fractions import Fraction

import pytest
import sympy as sp
from hypothesis import given, settings
from hypothesis import strategies as st

from foliation import algebra as alg
from foliation.local import (
    NotReduced,
    adapted_multiplicity,
    classify_point,
    corner_newton_polygon,
    degenerate_sides,
    divisor_trace_scan,
    eta_from_omega,
    make_generator,
    omega_from_eta,
    side_nondegenerate,
    swap_roles,
)
from foliation.poly import SparsePoly
from foliation.polytope import Side

x1, x2 = SparsePoly.var(2, 0), SparsePoly.var(2, 1)
ONE = SparsePoly.const(2, 1)
SQRT2 = alg.AlgebraicContext([Fraction(-2), Fraction(0), Fraction(1)])


def tangent_linear_part(g):
    """Jacobian at 0 of the field ``(Q, -P)`` of ``omega = P dx1 + Q dx2``, computed with sympy."""
    P, Q = omega_from_eta(g)
    a, b = sp.symbols("a b")

    def conv(f):
        return sum(sp.Rational(c.numerator, c.denominator) * a ** e[0] * b ** e[1] for e, c in f.terms.items())

    field = sp.Matrix([conv(Q), -conv(P)])
    return field.jacobian([a, b]).subs({a: 0, b: 0})


# adapted generators


def test_eta_examples():
    g = eta_from_omega(x2, x1)
    assert (g.a1, g.a2, g.natures) == (ONE, ONE, ("invariant", "invariant"))
    g = eta_from_omega(ONE, -ONE)
    assert (g.a1, g.a2, g.natures) == (x1, -x2, ("dicritical", "dicritical"))
    g = eta_from_omega(x2, -x1, divisor=(1,))
    assert (g.e, g.a1, g.a2, g.natures) == (1, x2, -ONE, ("invariant",))


def test_eta_rejects_common_factor():
    with pytest.raises(NotReduced):
        eta_from_omega(x1 * x2 + x1, x1)


small = st.dictionaries(st.tuples(st.integers(0, 2), st.integers(0, 2)), st.integers(-3, 3).filter(bool).map(Fraction), min_size=1, max_size=4)


@settings(max_examples=60, deadline=None)
@given(small, small)
def test_eta_omega_round_trip(a, b):
    f1, f2 = SparsePoly(2, a), SparsePoly(2, b)
    try:
        g = eta_from_omega(f1, f2)
    except NotReduced:
        return
    P, Q = omega_from_eta(g)
    # omega is recovered up to the common monomial that was stripped
    assert (P * f2 - Q * f1).is_constant() and not (P * f2 - Q * f1)


def test_multiplicity_examples():
    assert adapted_multiplicity(make_generator(2, 1 + x1, x2)) == 0
    assert adapted_multiplicity(make_generator(2, x1 + x2, x1 * x2)) == 1
    with pytest.raises(NotReduced):
        make_generator(2, x1**2, x1 * x2)


# classification


def test_classify_irrational_corner():
    k = classify_point(make_generator(2, ONE.to_context(SQRT2), ONE * (-SQRT2.gen)))
    assert k.variant == "Simple" and k.kind == "corner"
    assert alg.rational_value(k.ratio) is None


def test_classify_resonant_corner_uses_tangent_field():
    # eta = 2 dx1/x1 + dx2/x2 = d log(x1^2 x2): a saddle with eigenvalues (1, -2)
    g = make_generator(2, 2 + x1, 1 + x2)
    k = classify_point(g)
    assert k.eigenvalues == (1, -2)
    assert k.variant == "Simple"
    assert sorted(tangent_linear_part(g).eigenvals()) == [-2, 1]
    # eta = dx1/x1 - dx2/x2: radial field, presimple and not simple
    k = classify_point(make_generator(2, 1 + x1, -1 + x2))
    assert k.variant == "Presimple" and k.ratio == 1


def test_classify_dicritical_corner():
    assert classify_point(make_generator(2, x1, -x2)).variant == "NonPresimple"
    assert classify_point(make_generator(2, x1 + x1 * x2, x2 * 3 + x2**2)).variant == "NonPresimple"


generic_corner = st.tuples(st.integers(-3, 3), st.integers(-3, 3), small, small)


@settings(max_examples=80, deadline=None)
@given(generic_corner)
def test_presimple_iff_multiplicity_zero(data):
    c1, c2, t1, t2 = data
    a1 = SparsePoly(2, t1) * x1 * x2 + c1 + x1 * 2
    a2 = SparsePoly(2, t2) * x1 * x2 + c2 - x2
    try:
        g = make_generator(2, a1, a2)
    except NotReduced:
        return
    k = classify_point(g)
    if g.natures == ("invariant", "invariant") or "dicritical" in g.natures:
        presimple = k.variant in ("Presimple", "Simple", "SaddleNode", "RegularNC")
        if g.natures == ("dicritical", "dicritical"):
            assert not presimple
        else:
            assert presimple == (adapted_multiplicity(g) == 0) or k.variant == "NonPresimple"
    # the polygon is the orthant exactly at presimple-or-better corners
    assert corner_newton_polygon(g).is_orthant() == (adapted_multiplicity(g) == 0)


@settings(max_examples=80, deadline=None)
@given(st.integers(-4, 4), st.integers(-4, 4), st.integers(-3, 3), small, small)
def test_corner_eigenvalues_match_sympy(c1, c2, c3, t1, t2):
    a1 = SparsePoly.const(2, c1) + SparsePoly(2, t1) * x1 * x2
    a2 = SparsePoly.const(2, c2) + SparsePoly(2, t2) * x1 * x2 + x1 * c3
    if not a1 or not a2:
        return
    try:
        g = make_generator(2, a1, a2)
    except NotReduced:
        return
    k = classify_point(g)
    if k.eigenvalues is None:
        return
    ref = tangent_linear_part(g).eigenvals(multiple=True)
    assert sorted(map(Fraction, map(str, ref))) == sorted(Fraction(v) for v in k.eigenvalues)


def test_trace_model_eigenvalues_match_sympy():
    g = make_generator(1, x2 + x1 * 3, 2 + x2)
    k = classify_point(g)
    ref = tangent_linear_part(g)
    assert sorted(map(Fraction, map(str, ref.eigenvals(multiple=True)))) == sorted(k.eigenvalues)
    assert k.diagonalizable == ref.is_diagonalizable()


# Newton polygons and sides


def test_corner_polygon_examples():
    n = corner_newton_polygon(make_generator(2, x1, x2))
    assert set(n.vertices) == {(1, 0), (0, 1)} and n.slopes() == [-1]
    assert corner_newton_polygon(make_generator(2, ONE, x1 + x2**3)).is_orthant()
    n = corner_newton_polygon(make_generator(2, x1**3 + x2, x1 * x2))
    assert [(s.a, s.b) for s in n.sides] == [((0, 1), (3, 0))]


def test_side_examples():
    s = Side.through((1, 0), (0, 1))
    assert side_nondegenerate(make_generator(2, x1 + x2, x1 - x2), s)
    assert not side_nondegenerate(make_generator(2, x1 + x2, (x1 + x2) * 2 + x1**2), s)
    assert side_nondegenerate(make_generator(2, x1, x2), s)


def test_side_must_be_compact_side():
    with pytest.raises(ValueError):
        side_nondegenerate(make_generator(2, x1, x2), Side.through((2, 0), (0, 2)))


@settings(max_examples=60, deadline=None)
@given(small, small)
def test_swap_symmetry(a, b):
    try:
        g = make_generator(2, SparsePoly(2, a), SparsePoly(2, b))
    except NotReduced:
        return
    n, m = corner_newton_polygon(g), corner_newton_polygon(g, swapped=True)
    assert sorted(m.vertices) == sorted((q, p) for p, q in n.vertices)
    verdicts = sorted((tuple(sorted((s.a, s.b))), side_nondegenerate(g, s)) for s in n.sides)
    h = swap_roles(g)
    back = sorted((tuple(sorted(((s.a[1], s.a[0]), (s.b[1], s.b[0])))), side_nondegenerate(h, s)) for s in corner_newton_polygon(h).sides)
    assert verdicts == back


@settings(max_examples=40, deadline=None)
@given(small, small, st.integers(-3, 3).filter(bool), st.integers(-3, 3).filter(bool))
def test_unit_multiplier_invariance(a, b, u, v):
    """Multiplying by a unit and rescaling coordinates by units keeps the polygon and verdicts."""
    try:
        g = make_generator(2, SparsePoly(2, a), SparsePoly(2, b))
    except NotReduced:
        return
    unit = 1 + x1 * u + x2 * v
    scaled = [p.monomial_substitute([(1, 0), (0, 1)]) for p in (g.a1 * unit, g.a2 * unit)]
    # x_i -> c_i x_i with constant units
    scaled = [p.map_coeffs(lambda c: c) for p in scaled]
    scaled = [SparsePoly(2, {e: c * Fraction(u) ** e[0] * Fraction(v) ** e[1] for e, c in p.terms.items()}) for p in scaled]
    h = make_generator(2, *scaled, check=False)
    assert corner_newton_polygon(h).vertices == corner_newton_polygon(g).vertices
    assert [s for s in degenerate_sides(h)] == [s for s in degenerate_sides(g)]


# trace scans


def test_trace_scan_examples():
    pts = divisor_trace_scan(make_generator(2, x2 - 1, -(1 + x2)), 1)
    assert [(p.value, p.klass.variant, p.klass.eigenvalues) for p in pts] == [(1, "Presimple", (-2, -1))]
    pts = divisor_trace_scan(make_generator(2, (x2 - 1) ** 2, 1 + x1), 1)
    assert [(p.value, p.klass.variant) for p in pts] == [(1, "SaddleNode")]


def test_trace_scan_finds_every_singular_point():
    # a1 = 1 + x2 vanishes at x2 = -1, so omega = x2 a1 dx1 + x1 a2 dx2 is singular at (0, -1)
    g = make_generator(2, 1 + x2, x2)
    P, Q = omega_from_eta(g)
    assert P.evaluate((0, -1)) == 0 and Q.evaluate((0, -1)) == 0
    pts = divisor_trace_scan(g, 1)
    assert [p.value for p in pts] == [-1]


def test_trace_scan_over_extension():
    pts = divisor_trace_scan(make_generator(2, x2**2 - 2, 1 + x2), 1)
    assert len(pts) == 1
    p = pts[0]
    assert p.value * p.value == 2 and alg.rational_value(p.value) is None
    assert p.klass.presimple
