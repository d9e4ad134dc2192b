"""Foliations on the projective plane given by ``sum A_i dX_i/X_i``."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Sequence

from . import algebra as alg
from .blowup import Leaf, Witness, audit_leaves, pre_reduce
from .local import (
    AdaptedGenerator,
    AlgebraicTower,
    PointClass,
    corner_newton_polygon,
    divisor_trace_scan,
    lift_poly,
    make_generator,
    root_branches,
    side_nondegenerate,
)
from .poly import SparsePoly, exact_divide, gcd_bivariate, gcd_many, resultant, squarefree_part
from .polytope import Polytope2, convex_hull, homogeneous_segment_projection

VARS = ("X0", "X1", "X2")


class ValidationError(ValueError):
    pass


class DegreeMismatch(ValidationError):
    pass


class NonzeroSum(ValidationError):
    pass


class CommonFactor(ValidationError):
    pass


class EulerRelation(ValidationError):
    pass


@dataclass(frozen=True)
class ProjectiveFoliation:
    A: tuple
    context: object = None

    @property
    def d_F(self) -> int:
        return max(f.total_degree() for f in self.A if f)

    @property
    def natures(self) -> tuple:
        return tuple("dicritical" if (not f or f.min_degree_in(i) > 0) else "invariant" for i, f in enumerate(self.A))

    @property
    def foliation_degree(self) -> int:
        return self.d_F + 1 - self.natures.count("dicritical")

    def permuted(self, perm: Sequence[int]) -> "ProjectiveFoliation":
        """Coordinates ``X'_m = X_{perm[m]}``."""
        return ProjectiveFoliation(tuple(self.A[p].permute(perm) for p in perm), self.context)


def validate(A0: SparsePoly, A1: SparsePoly, A2: SparsePoly, context=None) -> ProjectiveFoliation:
    A = (A0, A1, A2)
    if any(f.arity != 3 for f in A):
        raise ValidationError("coefficients must be polynomials in X0, X1, X2")
    nz = [f for f in A if f]
    if not nz:
        raise ValidationError("all coefficients vanish")
    degrees = set()
    for i, f in enumerate(A):
        if f and (f.is_laurent() or not f.is_homogeneous()):
            raise DegreeMismatch(f"A{i} is not a homogeneous polynomial")
        if f:
            degrees.add(f.total_degree())
    if len(degrees) > 1:
        raise DegreeMismatch(f"coefficients have different degrees {sorted(degrees)}")
    if A0 + A1 + A2:
        raise NonzeroSum(f"A0 + A1 + A2 = {(A0 + A1 + A2)} is not zero")
    g = gcd_many(list(A))
    if not g.is_constant():
        raise CommonFactor(f"coefficients share the factor {g}")
    if context is None:
        context = next((f.context() for f in A if f.context() is not None), None)
    return ProjectiveFoliation(A, context)


def from_holomorphic(f0: SparsePoly, f1: SparsePoly, f2: SparsePoly, context=None) -> ProjectiveFoliation:
    """Logarithmic coefficients ``A_i = X_i f_i`` of ``omega = sum f_i dX_i``."""
    X = [SparsePoly.var(3, i) for i in range(3)]
    if X[0] * f0 + X[1] * f1 + X[2] * f2:
        raise EulerRelation("X0*f0 + X1*f1 + X2*f2 is not zero")
    A = [X[i] * f for i, f in enumerate((f0, f1, f2))]
    nz = [a for a in A if a]
    if not nz:
        raise ValidationError("all coefficients vanish")
    common = tuple(min(a.min_degree_in(i) for a in nz) for i in range(3))
    A = [a.monomial_shift(tuple(-c for c in common)) for a in A]
    return validate(*A, context=context)


def chart_generator(F: ProjectiveFoliation, i: int) -> AdaptedGenerator:
    """Corner model at ``O_i``: coefficients of ``dx_j/x_j`` and ``dx_k/x_k`` (``j < k``) with ``X_i = 1``."""
    j, k = [m for m in range(3) if m != i]
    a1 = F.A[j].specialize(i, 1).drop_var(i)
    a2 = F.A[k].specialize(i, 1).drop_var(i)
    return make_generator(2, a1, a2, F.context, check=False)


def chart_names(i: int) -> tuple:
    return tuple(f"x{m}" for m in range(3) if m != i)


# ---------------------------------------------------------------------------
# homogeneous polygon and cases


@dataclass(frozen=True)
class HomogeneousPolygon:
    points: tuple
    kind: str  # point | segment | fat
    vertices: tuple
    charts: tuple
    degree: int

    def to_json(self) -> dict:
        return {
            "points": [list(p) for p in self.points],
            "classification": self.kind,
            "vertices": [list(v) for v in self.vertices],
            "charts": [
                {"chart": i, "vertices": [list(v) for v in c.vertices], "area": str(c.area())} for i, c in enumerate(self.charts)
            ],
        }


def _lift(p2, d) -> tuple:
    return (d - p2[0] - p2[1], p2[0], p2[1])


def homogeneous_polygon(F: ProjectiveFoliation) -> HomogeneousPolygon:
    pts = sorted({e for f in F.A for e in f.terms})
    d = F.d_F
    charts = tuple(homogeneous_segment_projection(pts, i) for i in range(3))
    hull0 = charts[0]
    # dropping X0 is injective on the plane sum = d
    verts = tuple(sorted(_lift(v, d) for v in hull0.vertices))
    kind = {1: "point", 2: "segment"}.get(len(hull0.vertices), "fat")
    return HomogeneousPolygon(tuple(pts), kind, verts, charts, d)


@dataclass(frozen=True)
class CaseClass:
    variant: str  # A | B | C | NotWTT
    perm: tuple = (0, 1, 2)
    d: int = 0
    a: int = 0
    dt: int = 0
    at: int = 0
    n: int = 0
    evidence: str = ""

    def to_json(self) -> dict:
        out = {"variant": self.variant}
        if self.variant in ("B", "C"):
            out["perm"] = list(self.perm)
            out["d"] = self.d
        if self.variant == "C":
            out.update({"a": self.a, "d_tilde": self.dt, "a_tilde": self.at, "n": self.n})
        if self.evidence:
            out["evidence"] = self.evidence
        return out


def _inverse(perm):
    inv = [0, 0, 0]
    for m, p in enumerate(perm):
        inv[p] = m
    return tuple(inv)


def classify_case(poly: HomogeneousPolygon) -> CaseClass:
    """Case a (point), b (segment on a coordinate side) or c (vertex to opposite side).

    In case c the canonical coordinates put the vertex at ``X0`` and the other
    endpoint at ``(0, d-a, a)`` so that the segment is spanned by powers of
    ``U = X0^dt`` and ``V = X1^(dt-at) X2^at``.
    """
    if poly.kind == "point":
        return CaseClass("A")
    if poly.kind == "fat":
        return CaseClass("NotWTT", evidence="the homogeneous polygon has positive area")
    d = poly.degree
    v, w = poly.vertices
    for z in range(3):
        if v[z] == 0 and w[z] == 0:
            j, k = [m for m in range(3) if m != z]
            if {v[j], w[j]} == {0, d}:
                return CaseClass("B", (z, j, k), d)
    for p, q in ((v, w), (w, v)):
        for i in range(3):
            if p[i] == d and q[i] == 0:
                j, k = [m for m in range(3) if m != i]
                if q[j] > 0 and q[k] > 0:
                    a = q[k]
                    n = gcd(d, a)
                    return CaseClass("C", (i, j, k), d, a, d // n, a // n, n)
    return CaseClass("NotWTT", evidence="segment of neither shape")


def canonical(F: ProjectiveFoliation, case: CaseClass) -> ProjectiveFoliation:
    return F.permuted(case.perm)


def point_label(case: CaseClass, canon_point: Sequence) -> list:
    """Canonical projective coordinates back to the input coordinates."""
    out = [None, None, None]
    for m, p in enumerate(case.perm):
        out[p] = canon_point[m]
    return out


def to_original(f: SparsePoly, case: CaseClass) -> SparsePoly:
    return f.permute(_inverse(case.perm))


# ---------------------------------------------------------------------------
# Newton non-degeneracy on the whole plane


@dataclass(frozen=True)
class Verdict:
    ok: bool
    witness: dict | None = None

    def __bool__(self):
        return self.ok

    def to_json(self) -> dict:
        out: dict = {"verdict": self.ok}
        if self.witness is not None:
            out["witness"] = self.witness
        return out


def open_component_scan(F: ProjectiveFoliation, i: int):
    """Adapted singular points on ``X_i = 0`` away from the corners.

    Returns ``(chart, label, points)``; the chart is the first one meeting the component.
    """
    c = 0 if i != 0 else 1
    j, k = [m for m in range(3) if m != c]
    label = 1 if i == j else 2
    return c, label, divisor_trace_scan(chart_generator(F, c), label)


def torus_singularities(F: ProjectiveFoliation) -> list[dict]:
    """Common zeros of the chart-0 coefficients with ``x1 x2 != 0``."""
    g = chart_generator(F, 0)
    b1, b2 = g.a1, g.a2
    if not b1 or not b2:
        other = (b1 or b2).strip_monomial()
        if other.is_constant():
            return []
        return [{"kind": "torus", "curve": other.to_str(["x1", "x2"])}]
    b1, b2 = b1.strip_monomial(), b2.strip_monomial()
    if b1.is_constant() or b2.is_constant():
        return []
    r = resultant(b1, b2, 1)
    if not r:
        return [{"kind": "torus", "curve": gcd_bivariate(b1, b2).to_str(["x1", "x2"])}]
    found = []
    for ctx, s, modulus in root_branches(r, F.context):
        def common(c, s=s, ctx=ctx):
            sv = s if c == ctx else alg.coerce(s, c)
            h1 = lift_poly(b1, c, F.context).specialize(0, sv).drop_var(0).to_dense()
            h2 = lift_poly(b2, c, F.context).specialize(0, sv).drop_var(0).to_dense()
            g = alg.ugcd(h1, h2)
            while len(g) > 1 and not g[0]:
                g = g[1:]
            return sv, g

        for c, (sv, gg) in alg.over_branches(common, ctx):
            if len(gg) > 1:
                found.append({
                    "kind": "torus",
                    "x1": alg.scalar_str(sv, "l"),
                    "modulus": alg.ustr(c.modulus if c is not None else modulus, "l"),
                    "x2_polynomial": alg.ustr(gg, "y"),
                })
    return found


def newton_nondegenerate_everywhere(F: ProjectiveFoliation) -> Verdict:
    """Sides at the three corners, points of the open components, and the torus."""
    for i in range(3):
        g = chart_generator(F, i)
        for s in corner_newton_polygon(g).sides:
            if not side_nondegenerate(g, s):
                return Verdict(False, {"kind": "degenerate side", "corner": f"O{i}", "side": [list(s.a), list(s.b)]})
    for i in range(3):
        c, _, pts = open_component_scan(F, i)
        for tp in pts:
            if not tp.klass.presimple:
                return Verdict(False, {
                    "kind": "non-presimple point",
                    "component": VARS[i],
                    "chart": c,
                    "coordinate": alg.scalar_str(tp.value, "l"),
                    "modulus": alg.ustr(tp.modulus, "l"),
                })
    torus = torus_singularities(F)
    if torus:
        return Verdict(False, torus[0])
    return Verdict(True)


# ---------------------------------------------------------------------------
# the parameter set and the candidate curves


def uv_form(f: SparsePoly, case: CaseClass) -> SparsePoly:
    """A canonical case-c coefficient as a polynomial in ``U = X0^dt``, ``V = X1^(dt-at) X2^at``."""
    dt, at = case.dt, case.at
    terms = {}
    for (e0, e1, e2), c in f.terms.items():
        u, v = e0 // dt, e2 // at
        if (e0, e1, e2) != (u * dt, v * (dt - at), v * at):
            raise ValueError(f"term {(e0, e1, e2)} is not a monomial in U and V")
        terms[(u, v)] = c
    return SparsePoly(2, terms)


def _at_one(f: SparsePoly) -> list:
    """Dense coefficients of ``f(1, t)`` for a bivariate ``f``."""
    return f.specialize(0, 1).drop_var(0).to_dense() if f else []


def _b_form(f: SparsePoly) -> SparsePoly:
    """A canonical case-b coefficient as a polynomial in ``(X1, X2)``."""
    return f.specialize(0, 1).drop_var(0) if f else SparsePoly.zero(2)


@dataclass(frozen=True)
class LambdaSet:
    polynomial: tuple
    modulus: tuple
    count: int
    expected: int
    warnings: tuple
    branches: tuple  # (context, value, modulus)

    def to_json(self) -> dict:
        return {
            "modulus": alg.ustr(self.modulus, "l"),
            "count": str(self.count),
            "expected": str(self.expected),
            "warnings": list(self.warnings),
            "values": [
                {"value": alg.scalar_str(v, "l"), "modulus": alg.ustr(m, "l")} for _, v, m in self.branches
            ],
        }


def lambda_set(F: ProjectiveFoliation, case: CaseClass) -> LambdaSet:
    """``A0(1, l)`` in case b, ``(at*A0 + dt*A2)(1, l)`` in case c; squarefree, ``l`` stripped."""
    if case.variant not in ("B", "C"):
        raise ValueError(f"case {case.variant} has no parameter set")
    G = canonical(F, case)
    if case.variant == "B":
        h = _at_one(_b_form(G.A[0]))
        expected = case.d
        names = ("X1 divides A0", "X2 divides A0")
    else:
        h = _at_one(uv_form(G.A[0], case) * case.at + uv_form(G.A[2], case) * case.dt)
        expected = case.n
        names = ("U divides at*A0 + dt*A2", "V divides at*A0 + dt*A2")
    warnings = []
    if len(h) - 1 < expected:
        warnings.append(f"saddle-node: {names[0]}")
    if h and not h[0]:
        warnings.append(f"saddle-node: {names[1]}")
    while len(h) > 1 and not h[0]:
        h = h[1:]
    q = alg.umonic(alg.usquarefree(h)) if len(h) > 1 else [Fraction(1)]
    if len(q) < len(h):
        warnings.append("saddle-node: multiple factor")
    branches = tuple(root_branches(SparsePoly.from_dense(q), G.context)) if len(q) > 1 else ()
    if G.context is None:
        branches = _split_rational(branches)
    return LambdaSet(tuple(h), tuple(q), len(q) - 1, expected, tuple(warnings), branches)


def _split_rational(branches) -> tuple:
    """Split a rational-base branch whose modulus has rational roots, as dynamic evaluation reveals them."""
    out, todo = [], list(branches)
    while todo:
        ctx, value, modulus = todo.pop(0)
        try:
            alg.rational_value(value)
        except alg.ZeroDivisorSplit as split:
            for child in split.children():
                m = child.modulus
                todo.append((None, -m[0], tuple(m)) if len(m) == 2 else (child, child.gen, tuple(m)))
            continue
        out.append((ctx, value, modulus))
    return tuple(out)


def cusp_resolution_exponents(at: int, dt: int) -> tuple[int, int, int, int]:
    """The non-negative solution of ``a+b = at, c+d = dt, a*d - b*c = 1``."""
    if not (0 < at < dt) or gcd(at, dt) != 1:
        raise ValueError("need 0 < at < dt coprime")
    sols = [
        (al, at - al, ga, dt - ga)
        for al in range(at + 1)
        for ga in range(dt + 1)
        if al * (dt - ga) - (at - al) * ga == 1
    ]
    assert len(sols) == 1, sols
    return sols[0]


@dataclass(frozen=True)
class Curve:
    name: str
    poly: SparsePoly
    context: object = None
    modulus: tuple = ()
    kind: str = "divisor"  # divisor | line | cusp

    def to_json(self, certificate=None) -> dict:
        out = {"name": self.name, "equation": self.poly.to_str(VARS, "l") + " = 0", "kind": self.kind}
        if self.modulus:
            out["modulus"] = alg.ustr(self.modulus, "l")
        if certificate is not None:
            out["invariant"] = certificate
        return out


def family_curve(case: CaseClass, lam, ctx=None) -> SparsePoly:
    """``X2 - l X1`` (case b) or ``X1^(dt-at) X2^at - l X0^dt`` (case c), in input coordinates."""
    if case.variant == "B":
        f = SparsePoly.var(3, 2) - SparsePoly.var(3, 1) * lam
    else:
        v = SparsePoly.monomial((0, case.dt - case.at, case.at))
        f = v - SparsePoly.monomial((case.dt, 0, 0)) * lam
    if ctx is not None:
        f = f.to_context(ctx)
    return to_original(f, case)


def candidate_curves(F: ProjectiveFoliation, case: CaseClass, lam: LambdaSet | None = None) -> list[Curve]:
    lam = lam or lambda_set(F, case)
    out = []
    prefix = "l" if case.variant == "B" else "C"
    for ctx, value, modulus in lam.branches:
        r = alg.rational_value(value)
        name = f"{prefix}_{r}" if r is not None else f"{prefix}_[{alg.ustr(modulus, 'l')}]"
        out.append(Curve(name, family_curve(case, value, ctx), ctx, tuple(modulus) if ctx is not None else (), "line" if case.variant == "B" else "cusp"))
    return out


def divisor_curves(F: ProjectiveFoliation) -> list[Curve]:
    return [Curve(VARS[i], SparsePoly.var(3, i)) for i in range(3) if F.natures[i] == "invariant"]


def is_invariant_curve(F: ProjectiveFoliation, f: SparsePoly) -> bool:
    """``f`` divides ``P f_y - Q f_x`` in every affine chart, for the reduced ``P dx + Q dy``."""
    if not f or not f.is_homogeneous():
        raise ValueError("need a nonzero homogeneous polynomial")
    ctx = f.context() or F.context
    for i in range(3):
        j, k = [m for m in range(3) if m != i]
        fi = lift_poly(f, ctx, f.context()).specialize(i, 1).drop_var(i)
        if fi.is_constant():
            continue
        aj = lift_poly(F.A[j], ctx, F.context).specialize(i, 1).drop_var(i)
        ak = lift_poly(F.A[k], ctx, F.context).specialize(i, 1).drop_var(i)
        x, y = SparsePoly.var(2, 0), SparsePoly.var(2, 1)
        P, Q = y * aj, x * ak
        mono = [min(a, b) for a, b in zip(P.common_monomial() if P else (9**9, 9**9), Q.common_monomial() if Q else (9**9, 9**9))]
        P = P.monomial_shift([-m for m in mono])
        Q = Q.monomial_shift([-m for m in mono])
        test = P * fi.derivative(1) - Q * fi.derivative(0)
        if test and exact_divide(test, fi) is None:
            return False
    return True


# ---------------------------------------------------------------------------
# eigenvalues at the two ends of a curve of the family


@dataclass(frozen=True)
class RatioCheck:
    lam: object
    first: tuple  # (rho1, mu1)
    second: tuple  # (rho2, mu2)
    r1: object
    r2: object
    holds: bool
    relations: dict = field(default_factory=dict)
    degenerate: str = ""

    def to_json(self) -> dict:
        def s(v):
            return "infinity" if v is None else alg.scalar_str(v)

        out = {
            "lambda": alg.scalar_str(self.lam, "l"),
            "eigenvalues_1": [s(v) for v in self.first],
            "eigenvalues_2": [s(v) for v in self.second],
            "r1": s(self.r1),
            "r2": s(self.r2),
            "opposite": self.holds,
        }
        out.update({k: v for k, v in self.relations.items()})
        if self.degenerate:
            out["degenerate"] = self.degenerate
        return out


def _quo_at(h: list, root):
    """``(h / (t - root))(root)``; the division must be exact."""
    return alg.ueval(alg.uquo(h, [-root, 1]), root)


def _ratio(mu, rho):
    return None if not rho else mu / rho


def trace_eigenvalue_ratios(F: ProjectiveFoliation, case: CaseClass, lam, ctx=None) -> RatioCheck:
    """Eigenvalue pairs ``(rho, mu)`` at the two trace ends; ``r = mu / rho``.

    Case b uses ``rho1 = Abar0(1,l)``, ``rho2 = -Abar0(1,l)`` and
    ``mu1 = mu2 = -A2(1,l)/l`` with ``A0 = (X2 - l X1) Abar0``. Case c uses the
    ``B`` and ``C`` quotients along ``V = l U`` and checks
    ``mu1 = -l^(n-2) mu2`` and ``rho1 = l^(n-2) rho2``.
    """
    G = canonical(F, case)
    if ctx is None:
        ctx = alg.context_of(lam)

    def lift(f):
        return lift_poly(f, ctx, G.context) if ctx is not None else f

    if case.variant == "B":
        a0 = _at_one(lift(_b_form(G.A[0])))
        a2 = _at_one(lift(_b_form(G.A[2])))
        abar = _quo_at(a0, lam)
        mu = -alg.ueval(a2, lam) / lam
        first, second = (abar, mu), (-abar, mu)
        relations = {}
    elif case.variant == "C":
        at, dt, n = case.at, case.dt, case.n
        al, be, ga, de = cusp_resolution_exponents(at, dt)
        A0, A1, A2 = (lift(uv_form(f, case)) for f in G.A)
        rho1 = _quo_at(_at_one(A0 * at + A2 * dt), lam)
        mu1 = -alg.ueval(_at_one(A0 * be + A2 * de), lam) / lam
        inv = 1 / lam if not isinstance(lam, alg.AlgNum) else lam.inverse()
        k = (A0 * (dt - at) + A1 * dt).permute((1, 0))
        rho2 = _quo_at(_at_one(k), inv)
        mu2 = -alg.ueval(_at_one((A0 * (de - be) + A1 * de).permute((1, 0))), inv) * lam
        scale = lam ** (n - 2) if n >= 2 else inv ** (2 - n)
        first, second = (rho1, mu1), (rho2, mu2)
        relations = {
            "mu_relation": mu1 == -scale * mu2,
            "rho_relation": rho1 == scale * rho2,
        }
    else:
        raise ValueError("trace ratios exist only in cases b and c")
    r1, r2 = _ratio(first[1], first[0]), _ratio(second[1], second[0])
    degenerate = ""
    if r1 is None or r2 is None or not r1 or not r2:
        degenerate = "saddle-node: a zero eigenvalue at an end"
    holds = r1 is not None and r2 is not None and r1 == -r2
    if relations:
        holds = holds and all(relations.values())
    return RatioCheck(lam, first, second, r1, r2, holds, relations, degenerate)


# ---------------------------------------------------------------------------
# reduction of case c to case b


def pullback_reduction(F: ProjectiveFoliation, case: CaseClass) -> ProjectiveFoliation:
    """The foliation ``G`` with ``F = phi^* G`` for ``Y0 = U, Y1 = V, Y2 = X2^dt``."""
    if case.variant != "C":
        raise ValueError("pull-back reduction applies to case c")
    G = canonical(F, case)
    A0, A1, A2 = (uv_form(f, case) for f in G.A)
    at, dt = case.at, case.dt
    B = (A0 * (dt - at), A1 * dt, A1 * (-at) + A2 * (dt - at))

    def embed(f):
        return SparsePoly(3, {(u, v, 0): c for (u, v), c in f.terms.items()})

    return validate(*(embed(b) for b in B), context=F.context)


# ---------------------------------------------------------------------------
# CH scan and the dichotomy


@dataclass
class CHResult:
    ok: bool
    witnesses: list
    outcomes: list
    leaves: list
    failure: dict | None = None

    def to_json(self) -> dict:
        out = {"verdict": self.ok, "witnesses": [w.to_json() for w in self.witnesses]}
        if self.failure:
            out["failure"] = self.failure
        return out


def ch_scan(F: ProjectiveFoliation, max_depth: int = 64) -> CHResult:
    """Pre-reduce the three corners and audit every leaf and open-component point."""
    outcomes, leaves = [], []
    for i in range(3):
        j, k = [m for m in range(3) if m != i]
        o = pre_reduce(chart_generator(F, i), max_depth, (VARS[j], VARS[k]))
        outcomes.append(o)
        if not o.success:
            return CHResult(False, [], outcomes, leaves, {"corner": f"O{i}", "status": o.status})
        for leaf in o.leaves:
            leaves.append(Leaf(f"O{i}/{leaf.node}", leaf.kind, leaf.klass, leaf.generator, leaf.coordinate, leaf.modulus))
    for i in range(3):
        _, _, pts = open_component_scan(F, i)
        for tp in pts:
            if tp.klass.variant != "RegularNC":
                leaves.append(Leaf(VARS[i], "trace", tp.klass, tp.local, tp.value, tp.modulus))
    witnesses = audit_leaves(leaves)
    return CHResult(not witnesses, witnesses, outcomes, leaves)


def _first_integral(F: ProjectiveFoliation) -> tuple[tuple, str]:
    """Coprime integer exponents ``m`` with ``d(X^m)`` proportional to the generator."""
    consts = [f.constant_term() for f in F.A]
    base = next(c for c in consts if c)
    ratios = [alg.rational_value(c / base) for c in consts]
    den = 1
    for r in ratios:
        den = den * r.denominator // gcd(den, r.denominator)
    ints = [int(r * den) for r in ratios]
    g = 0
    for v in ints:
        g = gcd(g, abs(v))
    ints = [v // g for v in ints]
    if next(v for v in ints if v) < 0:
        ints = [-v for v in ints]
    text = "*".join(VARS[i] if e == 1 else f"{VARS[i]}^{e}" for i, e in enumerate(ints) if e)
    return tuple(ints), text


def _simple_ratio(r) -> bool:
    """An end with eigenvalue ratio ``r`` is simple and not a saddle-node."""
    if r is None or not r:
        return False
    v = alg.rational_value(r)
    return v is None or v < 0


@dataclass
class DichotomyReport:
    case: CaseClass
    polygon: HomogeneousPolygon
    nnd: Verdict
    ch: CHResult | None
    verdict: str
    first_integral: str | None = None
    exponents: tuple | None = None
    lam: LambdaSet | None = None
    curves: list = field(default_factory=list)
    certificates: list = field(default_factory=list)
    branches: list = field(default_factory=list)
    ratios: list = field(default_factory=list)
    notes: list = field(default_factory=list)
    reason: str = ""

    def verdict_json(self) -> dict:
        out: dict = {"verdict": self.verdict}
        if self.first_integral is not None:
            out["first_integral"] = self.first_integral
        if self.reason:
            out["reason"] = self.reason
        if self.notes:
            out["notes"] = list(self.notes)
        return out


def _branch(curve: Curve, point: str, coords, ratio, status: str, cusp=None) -> dict:
    out = {
        "curve": curve.name,
        "point": point,
        "coordinates": [alg.scalar_str(c, "l") for c in coords],
        "ratio": "infinity" if ratio is None else alg.scalar_str(ratio),
        "status": status,
    }
    if cusp is not None:
        out["cusp"] = list(cusp)
    return out


def _ends(case: CaseClass, lam):
    """Names and input coordinates of the two ends ``P1``, ``P2`` of the family curve."""
    if case.variant == "B":
        p1 = point_label(case, (0, 1, lam))
        p2 = point_label(case, (1, 0, 0))
        return (f"P_{alg.scalar_str(lam, 'l')}", p1), (f"O{case.perm[0]}", p2)
    p1 = point_label(case, (0, 1, 0))
    p2 = point_label(case, (0, 0, 1))
    return (f"O{case.perm[1]}", p1), (f"O{case.perm[2]}", p2)


def dichotomy(F: ProjectiveFoliation, max_depth: int = 64) -> DichotomyReport:
    poly = homogeneous_polygon(F)
    case = classify_case(poly)
    nnd = newton_nondegenerate_everywhere(F)
    rep = DichotomyReport(case, poly, nnd, None, "NotApplicable")
    if not nnd:
        rep.reason = "not Newton non-degenerate"
        return rep
    ch = ch_scan(F, max_depth)
    rep.ch = ch
    if not ch.ok:
        rep.reason = "pre-reduction failed" if ch.failure else "not complex hyperbolic"
        return rep
    if case.variant == "NotWTT":
        rep.reason = case.evidence
        return rep
    rep.curves = divisor_curves(F)
    if case.variant == "A":
        classes = [c for c in (_corner_class(F, i) for i in range(3))]
        if any(c.variant == "Presimple" for c in classes):
            rep.verdict = "I"
            rep.exponents, rep.first_integral = _first_integral(F)
        else:
            rep.verdict = "II"
        rep.certificates = [is_invariant_curve(F, c.poly) for c in rep.curves]
        return rep
    lam = lambda_set(F, case)
    rep.lam = lam
    rep.notes.extend(lam.warnings)
    family = candidate_curves(F, case, lam)
    toric = all(l.klass.variant == "Simple" for l in ch.leaves if l.kind == "trace")
    cusps = ((case.dt, case.dt - case.at), (case.dt, case.at)) if case.variant == "C" else (None, None)
    for curve, (ctx, value, _) in zip(family, lam.branches):
        rc = trace_eigenvalue_ratios(F, case, value, ctx)
        rep.ratios.append(rc)
        (n1, c1), (n2, c2) = _ends(case, value)
        for (name, coords), r, cusp in (((n1, c1), rc.r1, cusps[0]), ((n2, c2), rc.r2, cusps[1])):
            simple = _simple_ratio(r)
            if toric:
                rep.branches.append(_branch(curve, name, coords, r, "confirmed" if simple else "candidate", cusp))
            elif simple:
                rep.branches.append(_branch(curve, name, coords, r, "confirmed", cusp))
    rep.curves = rep.curves + family
    rep.certificates = [_certify(F, c) for c in rep.curves]
    if toric:
        rep.verdict = "II"
    else:
        rep.verdict = "WeakOnly"
        rep.notes.append("weak toric type only: some trace point of the pre-reduction is presimple but not simple")
    return rep


def _corner_class(F: ProjectiveFoliation, i: int) -> PointClass:
    from .local import classify_point

    return classify_point(chart_generator(F, i))


def _certify(F: ProjectiveFoliation, curve: Curve) -> bool:
    results = alg.over_branches(lambda c: is_invariant_curve(F, curve.poly if c == curve.context else curve.poly.to_context(c)), curve.context)
    return all(v for _, v in results)
