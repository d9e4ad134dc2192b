"""Local models of a foliation relative to a normal crossings divisor.

A generator is stored in the logarithmic form
``a1 dx1/x1 + a2 dx2/x2`` (two divisor components), ``a1 dx1/x1 + a2 dx2``
(one component, ``x1 = 0``) or ``a1 dx1 + a2 dx2`` (no component).
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Sequence

from . import algebra as alg
from .laurent import pair_nondegenerate
from .poly import INFINITY, SparsePoly, gcd_bivariate, order_at_origin, resultant, squarefree_part
from .polytope import NewtonPolygon, Side, newton_polygon_of_points, support_restriction

INVARIANT = "invariant"
DICRITICAL = "dicritical"

X1 = SparsePoly.var(2, 0)
X2 = SparsePoly.var(2, 1)


class NotReduced(ValueError):
    """The coefficients share a factor through the origin."""


@dataclass(frozen=True)
class DivisorComponentLocal:
    label: int
    nature: str
    order_rank: int = 0


@dataclass(frozen=True)
class AdaptedGenerator:
    e: int
    a1: SparsePoly
    a2: SparsePoly
    components: tuple
    context: object = None

    @property
    def natures(self) -> tuple:
        return tuple(c.nature for c in self.components)


def _divides_var(f: SparsePoly, i: int) -> bool:
    return bool(f) and f.min_degree_in(i) > 0


def component_nature(a: SparsePoly, i: int) -> str:
    return DICRITICAL if (not a or _divides_var(a, i)) else INVARIANT


def make_generator(e: int, a1: SparsePoly, a2: SparsePoly, context=None, ranks: Sequence[int] = (1, 0), check: bool = True) -> AdaptedGenerator:
    """Build an adapted generator, tagging component natures by divisibility."""
    if e not in (0, 1, 2):
        raise ValueError("e must be 0, 1 or 2")
    if not a1 and not a2:
        raise NotReduced("both coefficients vanish")
    if a1.is_laurent() or a2.is_laurent():
        raise ValueError("coefficients must be polynomials")
    if check:
        g = gcd_bivariate(a1, a2)
        if not g.is_constant() and not g.constant_term():
            raise NotReduced(f"coefficients share the factor {g}")
    comps = []
    if e >= 1:
        comps.append(DivisorComponentLocal(1, component_nature(a1, 0), ranks[0]))
    if e == 2:
        comps.append(DivisorComponentLocal(2, component_nature(a2, 1), ranks[1]))
    return AdaptedGenerator(e, a1, a2, tuple(comps), context)


def eta_from_omega(f1: SparsePoly, f2: SparsePoly, divisor: Sequence[int] = (1, 2), context=None) -> AdaptedGenerator:
    """Adapted generator of ``omega = f1 dx1 + f2 dx2`` for the divisor ``prod_{i in divisor} x_i = 0``."""
    divisor = tuple(sorted(set(divisor)))
    if divisor not in ((), (1,), (1, 2)):
        raise ValueError("divisor must be (), (1,) or (1, 2); relabel coordinates")
    g = gcd_bivariate(f1, f2)
    if not g.is_constant():
        raise NotReduced(f"omega has the common factor {g}")
    e = len(divisor)
    if e == 0:
        return make_generator(0, f1, f2, context, check=False)
    eps1 = 1 if (f2 and _divides_var(f2, 0)) or not f2 else 0
    if e == 1:
        a1 = (X1 * f1)
        a2 = f2
        if eps1:
            a1 = a1.monomial_shift((-1, 0))
            a2 = a2.monomial_shift((-1, 0))
        return make_generator(1, a1, a2, context)
    eps2 = 1 if (f1 and _divides_var(f1, 1)) or not f1 else 0
    shift = (-eps1, -eps2)
    a1 = (X1 * f1).monomial_shift(shift)
    a2 = (X2 * f2).monomial_shift(shift)
    return make_generator(2, a1, a2, context)


def omega_from_eta(g: AdaptedGenerator) -> tuple[SparsePoly, SparsePoly]:
    """Holomorphic ``(f1, f2)`` with ``omega = x^eps * eta``."""
    if g.e == 0:
        return g.a1, g.a2
    eps = [1 if c.nature == INVARIANT else 0 for c in g.components] + [0] * (2 - g.e)
    f1 = g.a1.monomial_shift((eps[0] - 1, eps[1]))
    if g.e == 1:
        f2 = g.a2.monomial_shift((eps[0], 0))
    else:
        f2 = g.a2.monomial_shift((eps[0], eps[1] - 1))
    return f1, f2


def adapted_multiplicity(g: AdaptedGenerator):
    return min(order_at_origin(g.a1), order_at_origin(g.a2), key=lambda v: (v is INFINITY, v if v is not INFINITY else 0))


# ---------------------------------------------------------------------------
# classification


@dataclass(frozen=True)
class PointClass:
    """``variant`` is one of RegularNC, NonPresimple, Presimple, Simple, SaddleNode."""

    variant: str
    kind: str | None = None
    eigenvalues: tuple | None = None
    diagonalizable: bool | None = None
    ratio: object = None
    case: str = ""

    @property
    def presimple(self) -> bool:
        return self.variant != "NonPresimple"

    @property
    def simple(self) -> bool:
        return self.variant in ("Simple", "SaddleNode", "RegularNC")

    def to_json(self) -> dict:
        out = {"variant": self.variant, "case": self.case}
        if self.kind:
            out["kind"] = self.kind
        if self.eigenvalues is not None:
            out["eigenvalues"] = [alg.scalar_str(v) for v in self.eigenvalues]
        if self.diagonalizable is not None:
            out["diagonalizable"] = self.diagonalizable
        if self.ratio is not None:
            out["ratio"] = "infinity" if self.ratio is INFINITY else alg.scalar_str(self.ratio)
        return out


def positive_rational(x) -> bool:
    """True iff ``x`` is a positive rational; may raise ZeroDivisorSplit."""
    v = alg.rational_value(x)
    return v is not None and v > 0


def classify_eigenvalues(kind: str, l1, l2, diagonalizable: bool, case: str) -> PointClass:
    """Classify a singular point from the eigenvalues of a non-zero linear part."""
    if not l1 and not l2:
        return PointClass("NonPresimple", kind, (l1, l2), diagonalizable, None, case)
    if not l1 or not l2:
        ratio = INFINITY if not l2 else Fraction(0)
        return PointClass("SaddleNode", kind, (l1, l2), True, ratio, case)
    ratio = l1 / l2
    if positive_rational(ratio):
        return PointClass("Presimple", kind, (l1, l2), diagonalizable, alg.rational_value(ratio), case)
    return PointClass("Simple", kind, (l1, l2), True, ratio, case)


def linear_part(g: AdaptedGenerator) -> list[list]:
    """Linear part at the origin of ``xi = Q d/dx1 - P d/dx2`` for ``omega = P dx1 + Q dx2``."""
    p, q = omega_from_eta(g)
    at0 = (Fraction(0), Fraction(0))
    return [
        [q.derivative(0).evaluate(at0), q.derivative(1).evaluate(at0)],
        [-p.derivative(0).evaluate(at0), -p.derivative(1).evaluate(at0)],
    ]


def classify_point(g: AdaptedGenerator) -> PointClass:
    """Case split of the presimplicity criterion by number and nature of components."""
    at0 = (Fraction(0), Fraction(0))
    if g.e == 0:
        if g.a1.constant_term() or g.a2.constant_term():
            return PointClass("RegularNC", None, case="0")
        return PointClass("NonPresimple", None, case="0")
    if g.e == 1:
        if g.components[0].nature == DICRITICAL:
            if g.a2.constant_term():
                return PointClass("RegularNC", "trace", case="1a")
            return PointClass("NonPresimple", "trace", case="1a")
        if g.a1.constant_term():
            return PointClass("RegularNC", "trace", case="1b")
        # omega = a1 dx1 + x1 a2 dx2: the linear part is lower triangular
        l1 = g.a2.constant_term()
        l2 = -g.a1.derivative(1).evaluate(at0)
        off = -g.a1.derivative(0).evaluate(at0)
        diag = bool(l1 - l2) or not off
        if not l1 and not l2:
            return PointClass("NonPresimple", "trace", (l1, l2), None, None, "1b")
        return classify_eigenvalues("trace", l1, l2, diag, "1b")
    n1, n2 = g.natures
    if n1 == DICRITICAL and n2 == DICRITICAL:
        return PointClass("NonPresimple", "corner", case="2a")
    if DICRITICAL in (n1, n2):
        inv = g.a1 if n1 == INVARIANT else g.a2
        if inv.constant_term():
            return PointClass("RegularNC", "corner", case="2b")
        return PointClass("NonPresimple", "corner", case="2b")
    # omega = x2 a1 dx1 + x1 a2 dx2, so xi = x1 a2 d/dx1 - x2 a1 d/dx2
    l1, l2 = g.a2.constant_term(), -g.a1.constant_term()
    return classify_eigenvalues("corner", l1, l2, True, "2c")


# ---------------------------------------------------------------------------
# corner Newton polygons


def swap_roles(g: AdaptedGenerator) -> AdaptedGenerator:
    """Exchange the two coordinates (and so the order of the two components)."""
    if g.e != 2:
        raise ValueError("only corners have two roles")
    a1 = g.a2.permute((1, 0))
    a2 = g.a1.permute((1, 0))
    c1, c2 = g.components
    comps = (replace(c2, label=1), replace(c1, label=2))
    return AdaptedGenerator(2, a1, a2, comps, g.context)


def corner_newton_polygon(g: AdaptedGenerator, swapped: bool = False) -> NewtonPolygon:
    """Newton polygon of the pair with ``(x2 = 0) < (x1 = 0)``; ``swapped`` reverses the order."""
    if g.e != 2:
        raise ValueError("corner Newton polygon needs e = 2")
    if swapped:
        g = swap_roles(g)
    return newton_polygon_of_points(list(g.a1.terms) + list(g.a2.terms))


def side_nondegenerate(g: AdaptedGenerator, side: Side) -> bool:
    if g.e != 2:
        raise ValueError("side non-degeneracy needs e = 2")
    if side not in corner_newton_polygon(g).sides:
        raise ValueError(f"{side} is not a compact side of the Newton polygon")
    return pair_nondegenerate(support_restriction(g.a1, side), support_restriction(g.a2, side), side.weight)


def degenerate_sides(g: AdaptedGenerator) -> list[Side]:
    return [s for s in corner_newton_polygon(g).sides if not side_nondegenerate(g, s)]


# ---------------------------------------------------------------------------
# points on a divisor component


def to_trace_point(g: AdaptedGenerator, label: int, lam) -> AdaptedGenerator:
    """Local generator at the point of component ``x_label = 0`` with other coordinate ``lam``.

    The other coordinate is translated to the origin and, on a corner model,
    the form is multiplied by the unit ``x2`` of the old coordinates.
    """
    if not lam:
        raise ValueError("the point lam = 0 is the corner")
    if g.e == 2 and label == 2:
        g = swap_roles(g)
    a1, a2 = g.a1, g.a2
    if g.e == 2:
        a1 = (a1 * X2).translate(1, lam)
        a2 = a2.translate(1, lam)
    elif g.e == 1 and label == 1:
        a1 = a1.translate(1, lam)
        a2 = a2.translate(1, lam)
    else:
        raise ValueError("component not present in this model")
    return make_generator(1, a1, a2, g.context, check=False)


@dataclass(frozen=True)
class TracePoint:
    """A point ``x_label = 0, other = value``; value lives in ``context`` (None for rationals)."""

    label: int
    value: object
    context: object
    modulus: tuple
    klass: PointClass
    local: AdaptedGenerator | None = field(default=None, compare=False, repr=False)

    def to_json(self) -> dict:
        return {
            "component": self.label,
            "coordinate": alg.scalar_str(self.value, "l"),
            "modulus": alg.ustr(self.modulus, "l"),
            "class": self.klass.to_json(),
        }


class AlgebraicTower(NotImplementedError):
    """Roots over a proper extension would need a second modulus."""


def root_branches(h: SparsePoly, base=None) -> list[tuple[object, object, tuple]]:
    """Nonzero roots of a univariate ``h`` as ``(context, value, modulus)`` triples.

    Over the rationals the squarefree part (without ``t`` factors) becomes the
    modulus of a new context, or a rational value when it is linear. Over an
    algebraic base only linear squarefree parts are supported.
    """
    h = h.strip_monomial() if h else h
    if not h or h.is_constant():
        return []
    if base is None:
        q = squarefree_part(h)
        dense = q.to_dense()
        if len(dense) == 2:
            return [(None, -dense[0] / dense[1], tuple(dense))]
        ctx = alg.AlgebraicContext(dense)
        return [(ctx, ctx.gen, tuple(ctx.modulus))]
    dense = h.to_context(base).to_dense()
    q = alg.usquarefree(dense)
    if len(q) == 2:
        return [(base, -q[0] / q[1], tuple(alg.coerce(c, base) for c in q))]
    if all(isinstance(c, alg.AlgNum) and c.is_rational_rep() for c in q):
        return [(k, lam, tuple(q)) for k, lam in joint_context(base, [c.rational() for c in q])]
    raise AlgebraicTower("roots of a polynomial with irrational coefficients")


def joint_context(base: alg.AlgebraicContext, q: Sequence[Fraction]):
    """Single context containing the base generator ``t`` and a root of rational ``q``.

    Uses a primitive element ``s = lam + c*t`` whose minimal data is
    ``Res_t(p(t), q(s - c*t))``; ``t`` is recovered as the common root of
    ``p(T)`` and ``q(s - c*T)``. Returns ``(context, image of lam)`` per branch of the context.
    """
    p = base.modulus
    s = SparsePoly.var(2, 0)
    t = SparsePoly.var(2, 1)
    pt = SparsePoly.from_dense(p).insert_var(0)
    for c in range(1, 50):
        qs = SparsePoly.zero(2)
        for k, coef in enumerate(q):
            qs = qs + (s - t * c) ** k * coef
        m = resultant(qs, pt, 1).to_dense()
        if len(alg.ugcd(m, alg.uderiv(m))) > 1:
            continue
        ctx = alg.AlgebraicContext(alg.umonic(m))

        def recover(k, c=c):
            lin = [k.gen, k(-c)]
            qT: list = []
            acc: list = [k(1)]
            for coef in q:
                qT = alg.uadd(qT, alg.uscale(acc, coef))
                acc = alg.umul(acc, lin)
            g = alg.ugcd([k(v) for v in p], qT)
            return -g[0] / g[1] if len(g) == 2 else None

        found = alg.over_branches(recover, ctx)
        if any(tval is None for _, tval in found):
            continue
        out = []
        for k, tval in found:
            _JOINT[k] = (base, tval)
            out.append((k, k.gen - tval * c))
        return out
    raise AlgebraicTower("no primitive element found")


_JOINT: dict = {}


def base_image(ctx, base):
    """Image of the base generator in a joint context (identity if equal)."""
    if ctx == base or ctx is None:
        return base.gen if base is not None else None
    return _JOINT[ctx][1]


def divisor_trace_scan(g: AdaptedGenerator, label: int = 1) -> list[TracePoint]:
    """Points ``lam != 0`` of component ``x_label = 0`` lying in the adapted singular locus."""
    if label > g.e:
        raise ValueError("component not present")
    model = swap_roles(g) if (g.e == 2 and label == 2) else g
    nature = model.components[0].nature
    # restriction to x1 = 0, as a polynomial in x2
    target = model.a2 if nature == DICRITICAL else model.a1
    h = target.specialize(0, 0).drop_var(0)
    out = []
    for ctx, lam, modulus in root_branches(h, g.context):
        def run(c, lam=lam, ctx=ctx):
            lv = lam if c == ctx else alg.coerce(lam, c)
            local = to_trace_point(_in_context(model, c), 1, lv)
            return lv, local, classify_point(local)

        for c, (lv, local, klass) in alg.over_branches(run, ctx):
            mod = tuple(c.modulus) if c is not None else modulus
            if c is not None and c.degree == 1:
                lv = alg.coerce(lv, c).rational() if isinstance(lv, alg.AlgNum) else lv
            out.append(TracePoint(label, lv, c, mod, klass, local))
    return out


def _in_context(g: AdaptedGenerator, ctx) -> AdaptedGenerator:
    if ctx is None or ctx == g.context:
        return g
    return AdaptedGenerator(g.e, lift_poly(g.a1, ctx, g.context), lift_poly(g.a2, ctx, g.context), g.components, ctx)


def lift_poly(f: SparsePoly, ctx, base=None) -> SparsePoly:
    """Move coefficients into ``ctx``; base-context values go through the joint embedding."""
    if ctx is None:
        return f
    if base is not None and ctx != base and ctx in _JOINT:
        tv = _JOINT[ctx][1]
        return f.map_coeffs(lambda c: alg.ueval([ctx(v) for v in c.coeffs], tv) if isinstance(c, alg.AlgNum) else ctx(c))
    return f.to_context(ctx)
