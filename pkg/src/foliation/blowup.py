"""Point blow-ups of adapted generators, the combinatorial pre-reduction and the CH audit."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from . import algebra as alg
from .local import (
    DICRITICAL,
    AdaptedGenerator,
    DivisorComponentLocal,
    PointClass,
    TracePoint,
    adapted_multiplicity,
    classify_point,
    corner_newton_polygon,
    component_nature,
    divisor_trace_scan,
    make_generator,
    side_nondegenerate,
)
from .poly import INFINITY, SparsePoly
from .polytope import Side

CHART0 = ((1, 0), (1, 1))  # x1 = x1', x2 = x1' x2'
CHART_INF = ((1, 1), (0, 1))  # x1 = x1'' x2'', x2 = x2''
IDENTITY = ((1, 0), (0, 1))


def matmul(m, s):
    return tuple(tuple(sum(m[i][k] * s[k][j] for k in range(2)) for j in range(2)) for i in range(2))


def pullback_log(a1: SparsePoly, a2: SparsePoly, s) -> tuple[SparsePoly, SparsePoly]:
    """Coefficients of ``a1 dx1/x1 + a2 dx2/x2`` after ``x_i = y^{s[i]}``."""
    b1 = a1.monomial_substitute(s)
    b2 = a2.monomial_substitute(s)
    return b1 * s[0][0] + b2 * s[1][0], b1 * s[0][1] + b2 * s[1][1]


def strip_common(a1: SparsePoly, a2: SparsePoly, var: int) -> tuple[SparsePoly, SparsePoly, int]:
    """Divide both by the largest common power of ``x_var``."""
    orders = [f.min_degree_in(var) for f in (a1, a2) if f]
    k = min(orders)
    shift = tuple(-k if i == var else 0 for i in range(2))
    return a1.monomial_shift(shift), a2.monomial_shift(shift), k


@dataclass(frozen=True)
class BlowupResult:
    chart0: AdaptedGenerator
    chart_inf: AdaptedGenerator
    dicritical: bool
    trace_points: tuple
    multiplicity: int


def _initial_forms(g: AdaptedGenerator, d: int):
    return g.a1.homogeneous_part(d), g.a2.homogeneous_part(d)


def blowup_corner(g: AdaptedGenerator) -> BlowupResult:
    """Blow up the corner of a two-component model.

    In chart 0 the new coordinates are ``(D, E2')``, in chart infinity
    ``(E1', D)``; the exceptional divisor ``D`` is dicritical exactly when the
    initial forms satisfy ``A1 + A2 = 0``.
    """
    if g.e != 2:
        raise ValueError("blowup_corner needs a corner (e = 2)")
    d = adapted_multiplicity(g)
    A1, A2 = _initial_forms(g, d)
    dicritical = not (A1 + A2)
    c1, c2 = g.components
    b1, b2 = pullback_log(g.a1, g.a2, CHART0)
    b1, b2, _ = strip_common(b1, b2, 0)
    nature_d = DICRITICAL if dicritical else "invariant"
    chart0 = AdaptedGenerator(
        2, b1, b2, (DivisorComponentLocal(1, nature_d, 0), DivisorComponentLocal(2, c2.nature, 0)), g.context
    )
    b1, b2 = pullback_log(g.a1, g.a2, CHART_INF)
    b1, b2, _ = strip_common(b1, b2, 1)
    chart_inf = AdaptedGenerator(
        2, b1, b2, (DivisorComponentLocal(1, c1.nature, 0), DivisorComponentLocal(2, nature_d, 0)), g.context
    )
    for model in (chart0, chart_inf):
        for c, a, i in zip(model.components, (model.a1, model.a2), (0, 1)):
            assert component_nature(a, i) == c.nature
    traces = tuple(divisor_trace_scan(chart0, 1))
    return BlowupResult(chart0, chart_inf, dicritical, traces, d)


def nonpresimple_trace_locus(A1: SparsePoly, A2: SparsePoly) -> list:
    """Defining polynomial (in ``lam``) of the non-presimple points on the new divisor.

    Uses only the initial forms: ``A1 = 0`` when ``A1 + A2 = 0``, otherwise
    the common roots of ``(A1+A2)(1, lam)`` and ``A2(1, lam)``; ``lam = 0`` removed.
    """
    def dehom(f):
        return f.specialize(0, 1).drop_var(0).to_dense() if f else []

    if not (A1 + A2):
        h = dehom(A1)
    else:
        h = alg.ugcd(dehom(A1 + A2), dehom(A2))
    while len(h) > 1 and not h[0]:
        h = h[1:]
    return alg.umonic(h) if len(h) > 1 else []


# ---------------------------------------------------------------------------
# sides


def side_transform(side: Side, chart, d: int = 0) -> Side:
    """Image of a compact side under the chart substitution, shifted by ``-d``.

    Chart 0 sends slope ``m`` to ``m/(1+m)`` and needs ``m > -1``; chart
    infinity sends it to ``m+1`` and needs ``m < -1``.
    """
    m = side.slope
    if m is None:
        raise ValueError("vertical sides are not compact sides")
    if m == -1:
        raise ValueError("a side of slope -1 becomes trace points on the new divisor")
    if chart == 0:
        if m < -1:
            raise ValueError("chart 0 needs slope > -1")
        f = lambda p: (p[0] + p[1] - d, p[1])  # noqa: E731
    elif chart in ("inf", INFINITY, 1):
        if m > -1:
            raise ValueError("chart infinity needs slope < -1")
        f = lambda p: (p[0], p[0] + p[1] - d)  # noqa: E731
    else:
        raise ValueError(f"unknown chart {chart!r}")
    return Side.through(f(side.a), f(side.b))


# ---------------------------------------------------------------------------
# trace centers


@dataclass(frozen=True)
class TraceBlowup:
    chart0: AdaptedGenerator
    chart_inf: AdaptedGenerator
    dicritical: bool
    points: tuple


def center_at(g: AdaptedGenerator, lam) -> AdaptedGenerator:
    """Translate a one-component model so that ``(0, lam)`` becomes the origin."""
    if g.e != 1:
        raise ValueError("trace centers live on one-component models")
    if not lam:
        raise ValueError("lam = 0 is the origin; blow it up directly")
    return make_generator(1, g.a1.translate(1, lam), g.a2.translate(1, lam), g.context, check=False)


def blowup_trace(g: AdaptedGenerator, lam=None) -> TraceBlowup:
    """Blow up a point of a one-component model ``a1 dx1/x1 + a2 dx2``.

    With ``lam`` the model is first translated to ``(0, lam)``. Chart 0 holds
    ``D`` as its only component, chart infinity the corner ``E' x D``.
    """
    if lam is not None:
        g = center_at(g, lam)
    if g.e != 1:
        raise ValueError("blowup_trace needs a one-component model")
    x2 = SparsePoly.var(2, 1)
    # chart 0: x1 = u, x2 = u v; dx2 = v du + u dv
    a1 = g.a1.monomial_substitute(CHART0)
    a2 = g.a2.monomial_substitute(CHART0)
    u = SparsePoly.var(2, 0)
    b1 = a1 + u * x2 * a2
    b2 = u * a2
    b1, b2, _ = strip_common(b1, b2, 0)
    chart0 = make_generator(1, b1, b2, g.context, check=False)
    # chart infinity: x1 = u v, x2 = v; dx1/x1 = du/u + dv/v, dx2 = dv = v dv/v
    a1 = g.a1.monomial_substitute(CHART_INF)
    a2 = g.a2.monomial_substitute(CHART_INF)
    c1, c2 = a1, a1 + x2 * a2
    c1, c2, _ = strip_common(c1, c2, 1)
    chart_inf = make_generator(2, c1, c2, g.context, check=False)
    dicritical = chart0.components[0].nature == DICRITICAL
    pts = [("corner", None, chart_inf, classify_point(chart_inf))]
    pts.append(("origin", Fraction(0), chart0, classify_point(chart0)))
    for tp in divisor_trace_scan(chart0, 1):
        pts.append(("trace", tp.value, tp.local, tp.klass))
    return TraceBlowup(chart0, chart_inf, dicritical, tuple(pts))


# ---------------------------------------------------------------------------
# pre-reduction driver


@dataclass
class BlowupNode:
    path: str
    chart: str
    generator: AdaptedGenerator
    klass: PointClass
    substitution: tuple
    components: tuple
    children: list = field(default_factory=list)
    traces: tuple = ()
    dicritical: bool | None = None

    def to_json(self) -> dict:
        out = {
            "path": self.path or "root",
            "chart": self.chart,
            "substitution": [list(r) for r in self.substitution],
            "components": [{"name": n, "nature": c.nature} for n, c in zip(self.components, self.generator.components)],
            "a1": self.generator.a1.to_str(),
            "a2": self.generator.a2.to_str(),
            "class": self.klass.to_json(),
        }
        if self.dicritical is not None:
            out["exceptional"] = {"name": _exc_name(self.path), "nature": DICRITICAL if self.dicritical else "invariant"}
            out["trace_points"] = [t.to_json() for t in self.traces]
        if self.children:
            out["children"] = [c.to_json() for c in self.children]
        return out


def _exc_name(path: str) -> str:
    return "D" + (path or "")


@dataclass(frozen=True)
class Leaf:
    node: str
    kind: str
    klass: PointClass
    generator: AdaptedGenerator
    coordinate: object = None
    modulus: tuple = ()

    def to_json(self) -> dict:
        out = {"node": self.node or "root", "type": self.kind, "class": self.klass.to_json()}
        if self.coordinate is not None:
            out["coordinate"] = alg.scalar_str(self.coordinate, "l")
            out["modulus"] = alg.ustr(self.modulus, "l")
        return out


@dataclass
class PreReductionOutcome:
    status: str
    tree: BlowupNode
    leaves: list
    node: str | None = None
    side: Side | None = None
    blowups: int = 0

    @property
    def success(self) -> bool:
        return self.status == "Success"

    def to_json(self) -> dict:
        out = {"status": self.status, "blowups": self.blowups, "tree": self.tree.to_json(), "leaves": [l.to_json() for l in self.leaves]}
        if self.status == "DegenerateSide":
            out["node"] = self.node or "root"
            if self.side is not None:
                out["side"] = [list(self.side.a), list(self.side.b)]
        return out


class _Stop(Exception):
    def __init__(self, status, node=None, side=None):
        self.status, self.node, self.side = status, node, side


def _slope_minus_one(g: AdaptedGenerator):
    for s in corner_newton_polygon(g).sides:
        if s.slope == -1:
            return s
    return None


def pre_reduce(root: AdaptedGenerator, max_depth: int = 64, names: tuple = ("E1", "E2")) -> PreReductionOutcome:
    """Blow up non-presimple corners (chart 0 before chart infinity) until all points are presimple."""
    if root.e != 2:
        raise ValueError("pre_reduce starts at a corner")
    leaves: list = []
    count = [0]

    def expand(g: AdaptedGenerator, path: str, chart: str, sub, comps, depth: int) -> BlowupNode:
        klass = classify_point(g)
        node = BlowupNode(path, chart, g, klass, sub, comps)
        if klass.presimple:
            if klass.variant != "RegularNC":
                leaves.append(Leaf(path, "corner", klass, g))
            return node
        for s in corner_newton_polygon(g).sides:
            if not side_nondegenerate(g, s):
                raise _Stop("DegenerateSide", path, s)
        if depth >= max_depth:
            raise _Stop("DepthExceeded", path)
        res = blowup_corner(g)
        count[0] += 1
        node.dicritical = res.dicritical
        node.traces = res.trace_points
        dname = _exc_name(path)
        for tp in res.trace_points:
            if not tp.klass.presimple:
                raise _Stop("DegenerateSide", path, _slope_minus_one(g))
            if tp.klass.variant != "RegularNC":
                leaves.append(Leaf(path, "trace", tp.klass, tp.local, tp.value, tp.modulus))
        node.children = [
            expand(res.chart0, path + "0", "0", matmul(sub, CHART0), (dname, comps[1]), depth + 1),
            expand(res.chart_inf, path + "i", "inf", matmul(sub, CHART_INF), (comps[0], dname), depth + 1),
        ]
        return node

    holder = BlowupNode("", "root", root, classify_point(root), IDENTITY, names)
    try:
        tree = expand(root, "", "root", IDENTITY, names, 0)
    except _Stop as stop:
        return PreReductionOutcome(stop.status, holder, sorted(leaves, key=_leaf_key), stop.node, stop.side, count[0])
    return PreReductionOutcome("Success", tree, sorted(leaves, key=_leaf_key), None, None, count[0])


def _leaf_key(leaf: Leaf):
    return (leaf.node, leaf.kind != "corner", alg.scalar_str(leaf.coordinate) if leaf.coordinate is not None else "")


def composed_substitution(path: str) -> tuple:
    sub = IDENTITY
    for ch in path:
        sub = matmul(sub, CHART0 if ch == "0" else CHART_INF)
    return sub


# ---------------------------------------------------------------------------
# CH audit


@dataclass(frozen=True)
class Witness:
    node: str
    reason: str
    klass: PointClass

    def to_json(self) -> dict:
        return {"node": self.node or "root", "reason": self.reason, "class": self.klass.to_json()}


def descent(l1: Fraction, l2: Fraction) -> list[tuple[Fraction, Fraction]]:
    """Eigenvalue pairs met while blowing up presimple points with ratio > 1."""
    if l1 / l2 < 1:
        l1, l2 = l2, l1
    chain = [(l1, l2)]
    while l1 != l2:
        l1 = l1 - l2
        if l1 / l2 < 1:
            l1, l2 = l2, l1
        chain.append((l1, l2))
    return chain


def _blow_any(g: AdaptedGenerator) -> list[tuple[str, AdaptedGenerator, PointClass]]:
    if g.e == 2:
        res = blowup_corner(g)
        pts = [("corner0", res.chart0, classify_point(res.chart0)), ("cornerinf", res.chart_inf, classify_point(res.chart_inf))]
        pts += [("trace", tp.local, tp.klass) for tp in res.trace_points]
        return pts
    res = blowup_trace(g)
    return [(k, gen, kl) for k, _, gen, kl in res.points]


def eigen_ratio(klass: PointClass) -> Fraction:
    """Rational eigenvalue ratio of a presimple point, normalized to be >= 1."""
    r = alg.rational_value(klass.eigenvalues[0] / klass.eigenvalues[1])
    return r if r >= 1 else 1 / r


def follow_descent(g: AdaptedGenerator, klass: PointClass):
    """Blow up along the presimple non-simple successor until the eigenvalues are equal.

    Each successor's ratio is checked against the arithmetic descent.
    Returns the final generator, its class and the descent chain.
    """
    expected = descent(eigen_ratio(klass), Fraction(1))
    cur_g, cur = g, klass
    for a, b in expected[1:]:
        nxt = [(gen, kl) for _, gen, kl in _blow_any(cur_g) if kl.variant == "Presimple"]
        if len(nxt) != 1:
            raise RuntimeError("descent lost its presimple successor")
        cur_g, cur = nxt[0]
        if eigen_ratio(cur) != a / b:
            raise RuntimeError("eigenvalue descent disagrees with the blown-up model")
    return cur_g, cur, expected


def audit_leaves(leaves) -> list[Witness]:
    """Saddle-nodes among the leaves or created by reducing their presimple points."""
    witnesses: list[Witness] = []
    for leaf in leaves:
        k = leaf.klass
        if k.variant == "SaddleNode":
            witnesses.append(Witness(leaf.node, "saddle-node", k))
        elif k.variant == "Presimple":
            if k.diagonalizable is False:
                witnesses.append(Witness(leaf.node, "non-diagonalizable linear part", k))
                continue
            if eigen_ratio(k) == 1:
                continue
            _, final, _ = follow_descent(leaf.generator, k)
            if final.diagonalizable is False:
                witnesses.append(Witness(leaf.node, "descent ends at a non-diagonalizable point", final))
    return witnesses


def ch_audit(outcome: PreReductionOutcome) -> tuple[bool, list[Witness]]:
    """Look for saddle-nodes in a pre-reduction and in the reduction it leads to."""
    if not outcome.success:
        raise ValueError("audit needs a successful pre-reduction")
    witnesses = audit_leaves(outcome.leaves)
    return not witnesses, witnesses
