"""Sparse (Laurent) polynomials in one to three variables over exact scalars."""

from __future__ import annotations

from fractions import Fraction
from math import comb, gcd
from typing import Iterable, Mapping, Sequence

from . import algebra as alg
from .kernels import sparse_axpy, sparse_mul


class _Infinity:
    """Order of the zero polynomial."""

    _inst = None

    def __new__(cls):
        if cls._inst is None:
            cls._inst = super().__new__(cls)
        return cls._inst

    def __repr__(self):
        return "INFINITY"

    def __eq__(self, other):
        return other is self

    def __hash__(self):
        return hash("INFINITY")

    def __lt__(self, other):
        return False

    def __gt__(self, other):
        return other is not self

    def __le__(self, other):
        return other is self

    def __ge__(self, other):
        return True


INFINITY = _Infinity()


def _is_scalar(x) -> bool:
    return isinstance(x, (int, Fraction, alg.AlgNum))


class SparsePoly:
    """Map from exponent tuples to nonzero scalars; negative exponents allowed."""

    __slots__ = ("arity", "terms")

    def __init__(self, arity: int, terms: Mapping[tuple, object] | None = None):
        if not 1 <= arity <= 3:
            raise ValueError("arity must be 1, 2 or 3")
        self.arity = arity
        clean = {}
        for e, c in (terms or {}).items():
            e = tuple(int(v) for v in e)
            if len(e) != arity:
                raise ValueError(f"exponent {e} does not have arity {arity}")
            if isinstance(c, int):
                c = Fraction(c)
            if c:
                clean[e] = c
        self.terms = clean

    @classmethod
    def _raw(cls, arity: int, terms: dict) -> "SparsePoly":
        p = cls.__new__(cls)
        p.arity = arity
        p.terms = terms
        return p

    # constructors -----------------------------------------------------------

    @classmethod
    def zero(cls, arity: int) -> "SparsePoly":
        return cls._raw(arity, {})

    @classmethod
    def const(cls, arity: int, c) -> "SparsePoly":
        return cls(arity, {(0,) * arity: c})

    @classmethod
    def var(cls, arity: int, i: int, power: int = 1) -> "SparsePoly":
        e = [0] * arity
        e[i] = power
        return cls(arity, {tuple(e): Fraction(1)})

    @classmethod
    def monomial(cls, exps: Sequence[int], c=1) -> "SparsePoly":
        return cls(len(exps), {tuple(exps): c})

    @classmethod
    def from_dense(cls, coeffs: Sequence) -> "SparsePoly":
        return cls(1, {(k,): c for k, c in enumerate(coeffs) if c})

    # basic protocol -----------------------------------------------------------

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if isinstance(other, SparsePoly):
            return self.arity == other.arity and self.terms == other.terms
        if _is_scalar(other):
            return self == SparsePoly.const(self.arity, other) if other else not self.terms
        return NotImplemented

    def __hash__(self):
        return hash((self.arity, frozenset((e, str(c)) for e, c in self.terms.items())))

    def _lift(self, other) -> "SparsePoly":
        if isinstance(other, SparsePoly):
            if other.arity != self.arity:
                raise ValueError("arity mismatch")
            return other
        if _is_scalar(other):
            return SparsePoly.const(self.arity, other)
        return NotImplemented

    def __add__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return SparsePoly._raw(self.arity, sparse_axpy(self.terms, o.terms, 1))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return SparsePoly._raw(self.arity, sparse_axpy(self.terms, o.terms, -1))

    def __rsub__(self, other):
        return (-self) + other

    def __neg__(self):
        return SparsePoly._raw(self.arity, {e: -c for e, c in self.terms.items()})

    def __mul__(self, other):
        if _is_scalar(other):
            return self.scale(other)
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return SparsePoly._raw(self.arity, sparse_mul(self.terms, o.terms))

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            if len(self.terms) != 1:
                raise ValueError("negative power of a non-monomial")
            (e, c), = self.terms.items()
            return SparsePoly(self.arity, {tuple(x * k for x in e): alg.inverse(c) ** (-k)})
        out = SparsePoly.const(self.arity, 1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def scale(self, c) -> "SparsePoly":
        if not c:
            return SparsePoly.zero(self.arity)
        return SparsePoly._raw(self.arity, {e: v * c for e, v in self.terms.items() if v * c})

    def __repr__(self):
        return f"SparsePoly({self.to_str()})"

    __str__ = lambda self: self.to_str()

    # inspection -------------------------------------------------------------

    def support(self) -> list[tuple]:
        return sorted(self.terms)

    def coeff(self, e: Sequence[int]):
        return self.terms.get(tuple(e), Fraction(0))

    def is_laurent(self) -> bool:
        return any(v < 0 for e in self.terms for v in e)

    def total_degree(self) -> int:
        if not self.terms:
            raise ValueError("degree of zero")
        return max(sum(e) for e in self.terms)

    def degree_in(self, i: int) -> int:
        if not self.terms:
            raise ValueError("degree of zero")
        return max(e[i] for e in self.terms)

    def min_degree_in(self, i: int) -> int:
        return min(e[i] for e in self.terms)

    def is_homogeneous(self) -> bool:
        return len({sum(e) for e in self.terms}) <= 1

    def is_constant(self) -> bool:
        return not self.terms or set(self.terms) == {(0,) * self.arity}

    def constant_term(self):
        return self.coeff((0,) * self.arity)

    def context(self):
        return alg.context_of(*self.terms.values())

    def leading(self):
        """Lex-leading exponent and coefficient."""
        e = max(self.terms)
        return e, self.terms[e]

    # transformations ----------------------------------------------------------

    def map_coeffs(self, fn) -> "SparsePoly":
        return SparsePoly(self.arity, {e: fn(c) for e, c in self.terms.items()})

    def to_context(self, ctx) -> "SparsePoly":
        return self.map_coeffs(lambda c: alg.coerce(c, ctx))

    def restrict(self, points: Iterable[Sequence[int]]) -> "SparsePoly":
        keep = {tuple(p) for p in points}
        return SparsePoly._raw(self.arity, {e: c for e, c in self.terms.items() if e in keep})

    def homogeneous_part(self, degree: int) -> "SparsePoly":
        return SparsePoly._raw(self.arity, {e: c for e, c in self.terms.items() if sum(e) == degree})

    def monomial_shift(self, shift: Sequence[int]) -> "SparsePoly":
        return SparsePoly._raw(self.arity, {tuple(a + b for a, b in zip(e, shift)): c for e, c in self.terms.items()})

    def monomial_substitute(self, images: Sequence[Sequence[int]]) -> "SparsePoly":
        """Substitute ``x_i -> x^{images[i]}`` (images are exponent vectors of the new arity)."""
        n = len(images[0])
        out: dict = {}
        for e, c in self.terms.items():
            ne = tuple(sum(e[i] * images[i][k] for i in range(self.arity)) for k in range(n))
            v = out.get(ne, 0) + c
            if v:
                out[ne] = v
            else:
                out.pop(ne, None)
        return SparsePoly._raw(n, out)

    def permute(self, perm: Sequence[int]) -> "SparsePoly":
        """Variable ``i`` of the result is variable ``perm[i]`` of self."""
        return SparsePoly._raw(self.arity, {tuple(e[p] for p in perm): c for e, c in self.terms.items()})

    def derivative(self, i: int) -> "SparsePoly":
        out = {}
        for e, c in self.terms.items():
            if e[i]:
                ne = list(e)
                ne[i] -= 1
                out[tuple(ne)] = c * e[i]
        return SparsePoly._raw(self.arity, out)

    def evaluate(self, point: Sequence):
        acc = Fraction(0)
        for e, c in self.terms.items():
            term = c
            for x, k in zip(point, e):
                if k:
                    term = term * (x ** k if k > 0 else alg.inverse(x) ** (-k))
            acc = acc + term
        return acc

    def specialize(self, i: int, value) -> "SparsePoly":
        """Set variable ``i`` to a scalar, keeping the arity (exponent ``i`` becomes 0)."""
        out: dict = {}
        for e, c in self.terms.items():
            ne = list(e)
            k = ne[i]
            ne[i] = 0
            ne = tuple(ne)
            v = c * (value ** k if k >= 0 else alg.inverse(value) ** (-k))
            s = out.get(ne, 0) + v
            if s:
                out[ne] = s
            else:
                out.pop(ne, None)
        return SparsePoly._raw(self.arity, out)

    def drop_var(self, i: int) -> "SparsePoly":
        """Remove variable ``i``, which must not occur."""
        if any(e[i] for e in self.terms):
            raise ValueError(f"variable {i} occurs")
        return SparsePoly._raw(self.arity - 1, {e[:i] + e[i + 1:]: c for e, c in self.terms.items()})

    def insert_var(self, i: int) -> "SparsePoly":
        return SparsePoly._raw(self.arity + 1, {e[:i] + (0,) + e[i:]: c for e, c in self.terms.items()})

    def translate(self, i: int, shift) -> "SparsePoly":
        """Substitute ``x_i -> x_i + shift``."""
        if not shift:
            return self
        out: dict = {}
        for e, c in self.terms.items():
            k = e[i]
            if k < 0:
                raise ValueError("cannot translate a Laurent variable")
            for j in range(k + 1):
                ne = list(e)
                ne[i] = j
                ne = tuple(ne)
                v = out.get(ne, 0) + c * comb(k, j) * shift ** (k - j)
                if v:
                    out[ne] = v
                else:
                    out.pop(ne, None)
        return SparsePoly._raw(self.arity, out)

    def common_monomial(self) -> tuple[int, ...]:
        return tuple(min(e[i] for e in self.terms) for i in range(self.arity))

    def strip_monomial(self) -> "SparsePoly":
        if not self.terms:
            return self
        m = self.common_monomial()
        return self.monomial_shift(tuple(-v for v in m))

    def to_dense(self) -> list:
        """Dense coefficient list of a univariate non-Laurent polynomial."""
        if self.arity != 1:
            raise ValueError("not univariate")
        if self.is_laurent():
            raise ValueError("Laurent polynomial")
        if not self.terms:
            return []
        out = [Fraction(0)] * (self.degree_in(0) + 1)
        for (k,), c in self.terms.items():
            out[k] = c
        return out

    def as_univariate(self, i: int) -> list["SparsePoly"]:
        """Coefficients in ``x_i`` (low first) as polynomials with ``x_i`` removed."""
        if not self.terms:
            return []
        deg = self.degree_in(i)
        cols: list[dict] = [dict() for _ in range(deg + 1)]
        for e, c in self.terms.items():
            cols[e[i]][e[:i] + e[i + 1:]] = c
        return [SparsePoly._raw(self.arity - 1, d) for d in cols]

    def monic(self) -> "SparsePoly":
        if not self.terms:
            return self
        return self.scale(alg.inverse(self.leading()[1]))

    def to_str(self, names: Sequence[str] | None = None, var: str = "t") -> str:
        """Readable form; ``var`` names the generator of an algebraic context."""
        names = names or default_names(self.arity)
        if not self.terms:
            return "0"
        parts = []
        for e in sorted(self.terms, key=lambda e: (-sum(e), tuple(-v for v in e))):
            c = self.terms[e]
            mono = "*".join(
                n if k == 1 else f"{n}^{k}" for n, k in zip(names, e) if k
            )
            if isinstance(c, alg.AlgNum) and not c.is_rational_rep():
                cs = "(" + alg.ustr(c.coeffs, var) + ")"
                parts.append(("+", cs + ("*" + mono if mono else "")))
                continue
            c = Fraction(c.rational() if isinstance(c, alg.AlgNum) else c)
            sign = "-" if c < 0 else "+"
            mag = abs(c)
            if not mono:
                body = str(mag)
            elif mag == 1:
                body = mono
            else:
                body = f"{mag}*{mono}"
            parts.append((sign, body))
        text = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        for sign, body in parts[1:]:
            text += f" {sign} {body}"
        return text


def default_names(arity: int) -> list[str]:
    return {1: ["t"], 2: ["x1", "x2"], 3: ["X0", "X1", "X2"]}[arity]


# ---------------------------------------------------------------------------
# operations on polynomials


def order_at_origin(f: SparsePoly):
    """Minimum total degree of the terms; INFINITY for zero."""
    if f.is_laurent():
        raise ValueError("order at the origin of a Laurent polynomial")
    if not f.terms:
        return INFINITY
    return min(sum(e) for e in f.terms)


def gcd_univariate(f: SparsePoly, g: SparsePoly) -> SparsePoly:
    """Monic gcd of two univariate polynomials.

    Over an algebraic context a zero-divisor leading coefficient raises
    :class:`~foliation.algebra.ZeroDivisorSplit`; use
    :func:`gcd_univariate_branches` to get one result per factor.
    """
    if f.arity != 1 or g.arity != 1:
        raise ValueError("gcd_univariate needs arity 1")
    return SparsePoly.from_dense(alg.ugcd(f.to_dense(), g.to_dense()))


def gcd_univariate_branches(f: SparsePoly, g: SparsePoly) -> list[tuple[object, SparsePoly]]:
    ctx = f.context() or g.context()
    return alg.over_branches(lambda c: gcd_univariate(f.to_context(c), g.to_context(c)), ctx)


def squarefree_part(f: SparsePoly) -> SparsePoly:
    if f.arity != 1:
        raise ValueError("squarefree_part needs arity 1")
    return SparsePoly.from_dense(alg.usquarefree(f.to_dense()))


def resultant(f: SparsePoly, g: SparsePoly, eliminate: int) -> SparsePoly:
    """Sylvester resultant of two bivariate polynomials with respect to ``x_eliminate``.

    The Sylvester matrix has polynomial entries in the remaining variable; its
    determinant is recovered by evaluating at enough rational points and
    interpolating.
    """
    if f.arity != 2 or g.arity != 2:
        raise ValueError("resultant needs arity 2")
    if not f or not g:
        raise ValueError("resultant of zero")
    if f.is_laurent() or g.is_laurent():
        raise ValueError("resultant of a Laurent polynomial")
    fc = f.as_univariate(eliminate)
    gc = g.as_univariate(eliminate)
    m, n = len(fc) - 1, len(gc) - 1
    if m == 0 and n == 0:
        return SparsePoly.const(1, 1)
    scale = Fraction(1)
    if all(isinstance(c, Fraction) for c in list(f.terms.values()) + list(g.terms.values())):
        lf = _denominator_lcm(f)
        lg = _denominator_lcm(g)
        fc = [c.scale(lf) for c in fc]
        gc = [c.scale(lg) for c in gc]
        scale = Fraction(1, lf ** n * lg ** m)
        integral = True
    else:
        integral = False
    fd = [c.to_dense() for c in fc]
    gd = [c.to_dense() for c in gc]
    if integral:
        fd = [[int(v) for v in c] for c in fd]
        gd = [[int(v) for v in c] for c in gd]
    bound = n * max(len(c) - 1 for c in fd) + m * max(len(c) - 1 for c in gd)
    xs = list(range(bound + 1))
    ys = []
    for x in xs:
        fv = [alg.ueval(c, x) for c in fd]
        gv = [alg.ueval(c, x) for c in gd]
        if m == 0:
            ys.append(fv[0] ** n)
        elif n == 0:
            ys.append(gv[0] ** m)
        else:
            # rows list coefficients by ascending power
            mat = alg.sylvester_matrix(fv[::-1], gv[::-1])
            ys.append(alg.int_det(mat) if integral else alg.udet(mat))
    dense = alg.uinterpolate([Fraction(x) for x in xs], [Fraction(y) if integral else y for y in ys])
    dense = alg.uscale(dense, scale)
    return SparsePoly.from_dense(dense)


def _denominator_lcm(f: SparsePoly) -> int:
    out = 1
    for c in f.terms.values():
        d = c.denominator
        out = out * d // gcd(out, d)
    return out


def exact_divide(f: SparsePoly, g: SparsePoly) -> SparsePoly | None:
    """Quotient ``f/g`` when ``g`` divides ``f`` exactly, else None (lex division)."""
    if not g:
        raise ZeroDivisionError("division by zero polynomial")
    r = f
    q = SparsePoly.zero(f.arity)
    ge, gc = g.leading()
    ginv = alg.inverse(gc)
    while r:
        re_, rc = r.leading()
        diff = tuple(a - b for a, b in zip(re_, ge))
        if any(v < 0 for v in diff):
            return None
        t = SparsePoly._raw(f.arity, {diff: rc * ginv})
        q = q + t
        r = r - t * g
    return q


def _primitive_gcd(f: SparsePoly, g: SparsePoly, var: int) -> SparsePoly:
    """gcd in K[y][x_var] for bivariate ``f, g`` via primitive remainder sequences."""
    other = 1 - var

    def coeff_polys(p):
        return [c.to_dense() for c in p.as_univariate(var)]

    def content(p):
        c: list = []
        for col in coeff_polys(p):
            c = alg.ugcd(c, col) if c else alg.umonic(col)
            if len(c) == 1:
                break
        return c

    def divide_by_univ(p, u):
        if len(u) <= 1:
            return p.scale(alg.inverse(u[0])) if u else p
        up = _embed(u, other)
        q = exact_divide(p, up)
        assert q is not None
        return q

    def prem(a, b):
        # pseudo-remainder of a by b in x_var
        db = b.degree_in(var)
        lb = SparsePoly._raw(2, {e: c for e, c in b.terms.items() if e[var] == db}).specialize(var, 1)
        r = a
        while r and r.degree_in(var) >= db:
            dr = r.degree_in(var)
            lr = SparsePoly._raw(2, {e: c for e, c in r.terms.items() if e[var] == dr}).specialize(var, 1)
            shift = [0, 0]
            shift[var] = dr - db
            r = r * lb - b.monomial_shift(shift) * lr
        return r

    ca, cb = content(f), content(g)
    cg = alg.ugcd(ca, cb)
    a = divide_by_univ(f, ca)
    b = divide_by_univ(g, cb)
    if a.degree_in(var) < b.degree_in(var):
        a, b = b, a
    while b and b.degree_in(var) > 0:
        r = prem(a, b)
        if not r:
            break
        a, b = b, divide_by_univ(r, content(r))
    if b and b.degree_in(var) == 0:
        return _embed(cg, other)
    return (b * _embed(cg, other)).monic()


def _embed(u: Sequence, i: int) -> SparsePoly:
    terms = {}
    for k, c in enumerate(u):
        if c:
            e = [0, 0]
            e[i] = k
            terms[tuple(e)] = c
    return SparsePoly(2, terms)


def gcd_bivariate(f: SparsePoly, g: SparsePoly) -> SparsePoly:
    """Monic (lex) gcd of two bivariate polynomials over an exact field."""
    if not f:
        return g.monic()
    if not g:
        return f.monic()
    mf, mg = f.common_monomial(), g.common_monomial()
    mono = tuple(min(a, b) for a, b in zip(mf, mg))
    fs, gs = f.strip_monomial(), g.strip_monomial()
    if fs.degree_in(1) == 0 and gs.degree_in(1) == 0:
        core = _embed(alg.ugcd(fs.drop_var(1).to_dense(), gs.drop_var(1).to_dense()), 0)
    else:
        core = _primitive_gcd(fs, gs, 1)
    return core.monomial_shift(mono).monic()


def gcd_many(polys: Sequence[SparsePoly]) -> SparsePoly:
    """gcd of bivariate or homogeneous trivariate polynomials, up to a scalar."""
    nz = [p for p in polys if p]
    if not nz:
        raise ValueError("gcd of zeros")
    if nz[0].arity == 1:
        g = nz[0]
        for p in nz[1:]:
            g = gcd_univariate(g, p)
        return g.monic()
    if nz[0].arity == 2:
        g = nz[0]
        for p in nz[1:]:
            g = gcd_bivariate(g, p)
            if g.is_constant():
                break
        return g
    # homogeneous trivariate: dehomogenize at X0, then restore the X0 power
    k0 = min(p.min_degree_in(0) for p in nz)
    deh = [p.specialize(0, 1).drop_var(0) for p in nz]
    g = gcd_many(deh)
    deg = max(sum(e) for e in g.terms) if g.terms else 0
    terms = {(deg - sum(e),) + e: c for e, c in g.terms.items()}
    return SparsePoly(3, terms).monomial_shift((k0, 0, 0))


def homogenize(f: SparsePoly, degree: int) -> SparsePoly:
    """From affine ``(x1, x2)`` to ``(X0, X1, X2)`` of the given degree."""
    return SparsePoly(3, {(degree - e[0] - e[1],) + e: c for e, c in f.terms.items()})
