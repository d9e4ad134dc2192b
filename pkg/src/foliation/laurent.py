"""Quasi-homogeneous Laurent polynomials, non-degenerate pairs and torus root counts."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from . import algebra as alg
from .polytope import Side, polygon_of, support_restriction
from .poly import SparsePoly, resultant


class NotQuasiHomogeneous(ValueError):
    def __init__(self, weight, e1, e2):
        super().__init__(
            f"exponents {e1} and {e2} have different degrees for weight {weight}"
        )
        self.exponents = (e1, e2)


@dataclass(frozen=True)
class QuasiHomogeneous:
    """``F = u^tau * sum_l c_l u1^{q(N-l)} u2^{p l}`` with ``reduced = sum_l c_l s^l``."""

    weight: tuple
    degree: int
    monomial_part: tuple
    reduced: tuple

    def reconstruct(self) -> SparsePoly:
        p, q = self.weight
        n = len(self.reduced) - 1
        t1, t2 = self.monomial_part
        terms = {}
        for l, c in enumerate(self.reduced):
            if c:
                terms[(t1 + q * (n - l), t2 + p * l)] = c
        return SparsePoly(2, terms)


def _check_weight(weight):
    p, q = weight
    if not ((q > 0 and gcd(p, q) == 1) or (p, q) == (1, 0)):
        raise ValueError(f"{weight} is not a weight vector")


def qh_decompose(F: SparsePoly, weight: tuple) -> QuasiHomogeneous:
    """Canonical decomposition along the line ``p*i + q*j = r``.

    Exponents on the line differ by multiples of the primitive direction
    ``(-q, p)``; the position along it is the exponent of ``s``.
    """
    _check_weight(weight)
    if not F:
        raise ValueError("zero is not quasi-homogeneous")
    p, q = weight
    exps = sorted(F.terms)
    r = p * exps[0][0] + q * exps[0][1]
    for e in exps[1:]:
        if p * e[0] + q * e[1] != r:
            raise NotQuasiHomogeneous(weight, exps[0], e)
    direction = (-q, p)
    norm = direction[0] ** 2 + direction[1] ** 2
    base = exps[0]

    def position(e):
        return ((e[0] - base[0]) * direction[0] + (e[1] - base[1]) * direction[1]) // norm

    pos = {e: position(e) for e in exps}
    lo = min(pos.values())
    hi = max(pos.values())
    reduced = [0] * (hi - lo + 1)
    start = None
    for e, k in pos.items():
        reduced[k - lo] = F.terms[e]
        if k == lo:
            start = e
    n = hi - lo
    tau = (start[0] - q * n, start[1])
    return QuasiHomogeneous((p, q), r, tau, tuple(reduced))


def pair_nondegenerate(F1: SparsePoly, F2: SparsePoly, weight: tuple) -> bool:
    """No common root ``alpha`` of the two decompositions; False if either is zero."""
    _check_weight(weight)
    if not F1 or not F2:
        return False
    d1 = qh_decompose(F1, weight)
    d2 = qh_decompose(F2, weight)
    g = alg.ugcd(list(d1.reduced), list(d2.reduced))
    return len(g) <= 1


@dataclass(frozen=True)
class PositionVerdict:
    ok: bool
    witness: Side | None = None

    def __bool__(self):
        return self.ok


def general_position(f1: SparsePoly, f2: SparsePoly) -> PositionVerdict:
    """Every side of the joint hull carries a non-degenerate pair of restrictions."""
    if not f1 or not f2:
        raise ValueError("general position needs nonzero polynomials")
    hull = polygon_of(f1, f2)
    for side in hull.sides():
        r1 = support_restriction(f1, side)
        r2 = support_restriction(f2, side)
        if not pair_nondegenerate(r1, r2, side.weight):
            return PositionVerdict(False, side)
    return PositionVerdict(True, None)


def bernstein_count_oracle(f1: SparsePoly, f2: SparsePoly) -> int:
    """Number of common zeros in the torus, with multiplicity, by elimination.

    Each polynomial is divided by its own monomial factor; the resultant in
    ``u2`` is stripped of ``u1`` powers and its roots are counted through the
    squarefree decomposition. Roots shared with a common zero on ``u2 = 0`` or
    ``u2 = infinity`` are discarded (they cannot occur in general position).
    """
    if not general_position(f1, f2):
        raise ValueError("pair is not in general position")
    if any(not isinstance(c, Fraction) for f in (f1, f2) for c in f.terms.values()):
        raise ValueError("the oracle works over the rationals")
    g1 = f1.strip_monomial()
    g2 = f2.strip_monomial()
    if g1.is_constant() or g2.is_constant():
        return 0
    if g1.degree_in(1) == 0 and g2.degree_in(1) == 0:
        # both free of u2: common roots in u1 give whole lines, excluded above
        return 0
    res = resultant(g1, g2, 1)
    if not res:
        raise ValueError("common factor: infinitely many solutions")
    dense = res.strip_monomial().to_dense()
    if len(dense) <= 1:
        return 0
    low1 = g1.specialize(1, 0).drop_var(1).to_dense()
    low2 = g2.specialize(1, 0).drop_var(1).to_dense()
    top1 = g1.as_univariate(1)[-1].to_dense()
    top2 = g2.as_univariate(1)[-1].to_dense()
    spurious = alg.umul(alg.ugcd(low1, low2) or [1], alg.ugcd(top1, top2) or [1])
    count = 0
    for factor, mult in alg.usquarefree_decomposition(dense):
        bad = alg.ugcd(factor, spurious)
        count += mult * (len(factor) - len(bad))
    return count
