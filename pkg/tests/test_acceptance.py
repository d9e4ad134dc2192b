"""The ten acceptance criteria, each printing one PASS/FAIL line."""

import time
from itertools import islice
from math import gcd

import pytest

from corpus import (
    case_b_foliations,
    case_c_foliations,
    corner_generators,
    homogeneous_pairs,
    jouanolou,
    laurent_pairs,
    pencil_instance,
    projective_corpus,
    sqrt2_instance,
)
from foliation.blowup import blowup_corner, ch_audit, nonpresimple_trace_locus, pre_reduce, side_transform
from foliation.laurent import bernstein_count_oracle, general_position, pair_nondegenerate
from foliation.local import classify_point, corner_newton_polygon, degenerate_sides, side_nondegenerate
from foliation.poly import SparsePoly
from foliation.polytope import mixed_area, polygon_of
from foliation.projective import (
    ch_scan,
    classify_case,
    cusp_resolution_exponents,
    dichotomy,
    homogeneous_polygon,
    is_invariant_curve,
    lambda_set,
    newton_nondegenerate_everywhere,
    pullback_reduction,
    trace_eigenvalue_ratios,
    validate,
)


@pytest.fixture
def report(capsys):
    def emit(n, ok, detail):
        with capsys.disabled():
            print(f"\nCRITERION {n}: {'PASS' if ok else 'FAIL'} ({detail})")
        assert ok, detail

    return emit


def test_criterion_1_bernstein(report):
    t = time.perf_counter()
    u1, u2 = SparsePoly.var(2, 0), SparsePoly.var(2, 1)
    pinned = bernstein_count_oracle(1 + u1 + u2, 1 + u1 * u2) == mixed_area(polygon_of(1 + u1 + u2), polygon_of(1 + u1 * u2)) == 2
    checked = bad = 0
    for f1, f2 in islice(laurent_pairs(10**6), 2000):
        if checked >= 220:
            break
        if not f1 or not f2 or not general_position(f1, f2):
            continue
        checked += 1
        bad += bernstein_count_oracle(f1, f2) != mixed_area(polygon_of(f1), polygon_of(f2))
    elapsed = time.perf_counter() - t
    ok = pinned and checked >= 200 and bad == 0 and elapsed < 30
    report(1, ok, f"{checked} pairs, {bad} disagreements, pinned={pinned}, {elapsed:.1f}s")


def _sides_ok_at_reachable_corners(g, depth=40):
    """Blow up non-presimple corners and check every compact side met on the way."""
    if classify_point(g).presimple:
        return True
    if degenerate_sides(g):
        return False
    if depth == 0:
        raise RuntimeError("no decision within the depth bound")
    r = blowup_corner(g)
    return _sides_ok_at_reachable_corners(r.chart0, depth - 1) and _sides_ok_at_reachable_corners(r.chart_inf, depth - 1)


def test_criterion_2_deciders(report):
    compared = agree = skipped = 0
    for g in corner_generators(160):
        outcome = pre_reduce(g, 40)
        if outcome.success and not ch_audit(outcome)[0]:
            skipped += 1
            continue
        compared += 1
        agree += _sides_ok_at_reachable_corners(g) == outcome.success == (not degenerate_sides(g))
    ok = compared >= 100 and agree == compared
    report(2, ok, f"{agree}/{compared} agree, {skipped} excluded by the CH audit")


def test_criterion_3_side_bijection(report):
    sides = bad = 0
    for g in corner_generators(160):
        if classify_point(g).presimple:
            continue
        r = blowup_corner(g)
        chart0_sides = corner_newton_polygon(r.chart0).sides
        for s in corner_newton_polygon(g).sides:
            if s.slope == -1:
                continue
            chart, model = (0, r.chart0) if s.slope > -1 else ("inf", r.chart_inf)
            t = side_transform(s, chart, r.multiplicity)
            expected = s.slope / (1 + s.slope) if chart == 0 else s.slope + 1
            present = t in (chart0_sides if chart == 0 else corner_newton_polygon(model).sides)
            sides += 1
            bad += not (t.slope == expected and present and side_nondegenerate(model, t) == side_nondegenerate(g, s))
    report(3, sides > 0 and bad == 0, f"{sides} sides, {bad} mismatches")


def test_criterion_4_trace_locus(report):
    compared = agree = excluded = 0
    for A1, A2, g in homogeneous_pairs(200):
        r = blowup_corner(g)
        # a saddle-node on T makes the foliation non-CH; the equivalence is stated under CH
        if any(t.klass.variant == "SaddleNode" for t in r.trace_points):
            excluded += 1
            continue
        compared += 1
        presimple = all(t.klass.presimple for t in r.trace_points)
        agree += pair_nondegenerate(A1, A2, (1, 1)) == presimple == (not nonpresimple_trace_locus(A1, A2))
    ok = compared >= 100 and agree == compared
    report(4, ok, f"{agree}/{compared} agree, {excluded} saddle-node pairs excluded")


def test_criterion_5_area_zero(report):
    passing = bad = fat = fat_bad = 0
    for label, F in projective_corpus():
        p = homogeneous_polygon(F)
        nnd = newton_nondegenerate_everywhere(F)
        if nnd and ch_scan(F).ok:
            passing += 1
            bad += p.kind not in ("point", "segment")
        if p.kind == "fat":
            fat += 1
            fat_bad += bool(nnd) or not nnd.witness
    j = jouanolou()
    jv = newton_nondegenerate_everywhere(j)
    jok = homogeneous_polygon(j).kind == "fat" and not jv and bool(jv.witness)
    ok = passing > 0 and bad == 0 and fat_bad == 0 and jok
    report(5, ok, f"{passing} passing foliations, {bad} fat among them; {fat} fat inputs, {fat_bad} without witness; Jouanolou ok={jok}")


def test_criterion_6_ratio_identity(report):
    checks = bad = 0
    for F in case_b_foliations(40) + case_c_foliations(30) + [sqrt2_instance(), pencil_instance()]:
        case = classify_case(homogeneous_polygon(F))
        L = lambda_set(F, case)
        for ctx, value, _ in L.branches:
            r = trace_eigenvalue_ratios(F, case, value, ctx)
            if r.degenerate:
                continue
            checks += 1
            good = r.holds and r.r1 == -r.r2
            if case.variant == "C":
                good = good and r.relations.get("mu_relation") and r.relations.get("rho_relation")
            bad += not good
    report(6, checks > 0 and bad == 0, f"{checks} trace-ratio checks, {bad} failures")


def test_criterion_7_dichotomy(report):
    t = time.perf_counter()
    one = SparsePoly.const(3, 1)
    a = dichotomy(validate(one, one, -2 * one))
    ok_a = a.verdict == "I" and a.first_integral == "X0*X1*X2^-2"
    b = dichotomy(sqrt2_instance())
    ok_b = (
        b.verdict == "II"
        and [c.name for c in b.curves] == ["X0", "X1", "X2", "l_1"]
        and sorted((x["curve"], x["point"]) for x in b.branches) == [("l_1", "O0"), ("l_1", "P_1")]
    )
    c = dichotomy(pencil_instance())
    ok_c = c.verdict == "WeakOnly" and [(x["curve"], x["point"]) for x in c.branches] == [("l_1", "O0")]
    elapsed = time.perf_counter() - t
    report(7, ok_a and ok_b and ok_c and elapsed < 10, f"case a={ok_a}, sqrt2={ok_b}, pencil={ok_c}, {elapsed:.2f}s")


def test_criterion_8_certificates(report):
    curves = bad = 0
    for label, F in projective_corpus():
        r = dichotomy(F)
        if r.verdict != "II":
            continue
        for curve in r.curves:
            curves += 1
            bad += not is_invariant_curve(F, curve.poly)
    X1, X2 = SparsePoly.var(3, 1), SparsePoly.var(3, 2)
    F = sqrt2_instance()
    control = is_invariant_curve(F, (X2 - 2 * X1).to_context(F.context))
    report(8, curves > 0 and bad == 0 and not control, f"{curves} curves certified, {bad} failures, control invariant={control}")


def test_criterion_9_exponents(report):
    pairs = [(at, dt) for dt in range(2, 31) for at in range(1, dt) if gcd(at, dt) == 1]
    t = time.perf_counter()
    got = [cusp_resolution_exponents(at, dt) for at, dt in pairs]
    elapsed = time.perf_counter() - t
    bad = 0
    for (at, dt), sol in zip(pairs, got):
        # the two sums fix beta and delta, so this covers every non-negative solution
        sols = [(al, at - al, ga, dt - ga) for al in range(at + 1) for ga in range(dt + 1) if al * (dt - ga) - (at - al) * ga == 1]
        bad += sols != [sol]
    pairs = len(pairs)
    report(9, bad == 0 and elapsed < 1, f"{pairs} coprime pairs, {bad} mismatches, {elapsed:.2f}s")


def test_criterion_10_pullback(report):
    n = bad = 0
    for F in case_c_foliations(30):
        case = classify_case(homogeneous_polygon(F))
        G = pullback_reduction(F, case)
        cg = classify_case(homogeneous_polygon(G))
        n += 1
        bad += not (cg.variant == "B" and lambda_set(G, cg).modulus == lambda_set(F, case).modulus)
    report(10, n > 0 and bad == 0, f"{n} case-c instances, {bad} failures")

