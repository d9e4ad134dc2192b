"""Exact scalars: rationals and residues in Q[t]/(q) with dynamic splitting.

Rationals are plain :class:`fractions.Fraction`. An :class:`AlgebraicContext`
holds a monic squarefree modulus ``q``; its elements are :class:`AlgNum`
residues. When an inversion meets a zero divisor the context is not factored;
instead :class:`ZeroDivisorSplit` is raised carrying the two coprime factors,
and :func:`over_branches` reruns the computation on each of them.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd as igcd
from math import isqrt
from typing import Callable, Iterable, Sequence, TypeVar

from .kernels import dense_divmod, dense_mul

T = TypeVar("T")

# ---------------------------------------------------------------------------
# dense univariate polynomials over an exact field (lists, low degree first)


def utrim(a: Iterable) -> list:
    out = list(a)
    while out and not out[-1]:
        out.pop()
    return out


def uadd(a: Sequence, b: Sequence) -> list:
    n = max(len(a), len(b))
    return utrim((a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n))


def usub(a: Sequence, b: Sequence) -> list:
    n = max(len(a), len(b))
    return utrim((a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0) for i in range(n))


def uscale(a: Sequence, c) -> list:
    return utrim(x * c for x in a)


def umul(a: Sequence, b: Sequence) -> list:
    return dense_mul(list(a), list(b))


def inverse(c):
    """Field inverse; raises ZeroDivisionError or ZeroDivisorSplit."""
    if isinstance(c, AlgNum):
        return c.inverse()
    return Fraction(1) / c


def udivmod(a: Sequence, b: Sequence) -> tuple[list, list]:
    if not b:
        raise ZeroDivisionError("division by the zero polynomial")
    return dense_divmod(list(a), list(b), inverse(b[-1]))


def umonic(a: Sequence) -> list:
    if not a:
        return []
    return uscale(a, inverse(a[-1]))


def ugcd(a: Sequence, b: Sequence) -> list:
    """Monic gcd by the Euclidean algorithm."""
    a, b = utrim(a), utrim(b)
    while b:
        a, b = b, udivmod(a, b)[1]
    return umonic(a)


def uegcd(a: Sequence, b: Sequence) -> tuple[list, list, list]:
    """Return monic ``g`` and ``s, u`` with ``s*a + u*b = g``."""
    r0, r1 = utrim(a), utrim(b)
    s0, s1 = [Fraction(1)], []
    t0, t1 = [], [Fraction(1)]
    while r1:
        q, r = udivmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, usub(s0, umul(q, s1))
        t0, t1 = t1, usub(t0, umul(q, t1))
    if not r0:
        return [], [], []
    inv = inverse(r0[-1])
    return uscale(r0, inv), uscale(s0, inv), uscale(t0, inv)


def uderiv(a: Sequence) -> list:
    return utrim(a[i] * i for i in range(1, len(a)))


def ueval(a: Sequence, x):
    acc = 0
    for c in reversed(a):
        acc = acc * x + c
    return acc


def uquo(a: Sequence, b: Sequence) -> list:
    q, r = udivmod(a, b)
    if r:
        raise ArithmeticError("inexact polynomial division")
    return q


def usquarefree(a: Sequence) -> list:
    """Monic squarefree part ``a / gcd(a, a')``."""
    a = utrim(a)
    if not a:
        raise ValueError("squarefree part of zero")
    g = ugcd(a, uderiv(a))
    return umonic(uquo(a, g))


def usquarefree_decomposition(a: Sequence) -> list[tuple[list, int]]:
    """Yun's algorithm: pairs ``(factor, multiplicity)`` with monic factors."""
    a = umonic(utrim(a))
    if len(a) <= 1:
        return []
    out = []
    b = uderiv(a)
    c = ugcd(a, b)
    w = uquo(a, c)
    y = uquo(b, c)
    k = 1
    while len(w) > 1:
        z = usub(y, uderiv(w))
        g = ugcd(w, z)
        if len(g) > 1:
            out.append((g, k))
        w = uquo(w, g)
        y = uquo(z, g)
        k += 1
    return out


def udet(matrix: list[list]):
    """Determinant by Gaussian elimination over a field."""
    m = [list(row) for row in matrix]
    n = len(m)
    det = 1
    for col in range(n):
        piv = next((r for r in range(col, n) if m[r][col]), None)
        if piv is None:
            return 0
        if piv != col:
            m[col], m[piv] = m[piv], m[col]
            det = -det
        p = m[col][col]
        det = det * p
        ip = inverse(p)
        for r in range(col + 1, n):
            f = m[r][col]
            if f:
                f = f * ip
                row, prow = m[r], m[col]
                for k in range(col, n):
                    row[k] = row[k] - f * prow[k]
    return det


def int_det(matrix: list[list[int]]) -> int:
    """Fraction-free (Bareiss) determinant of an integer matrix."""
    m = [list(row) for row in matrix]
    n = len(m)
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            piv = next((r for r in range(k + 1, n) if m[r][k]), None)
            if piv is None:
                return 0
            m[k], m[piv] = m[piv], m[k]
            sign = -sign
        pk = m[k][k]
        rowk = m[k]
        for i in range(k + 1, n):
            rowi = m[i]
            mik = rowi[k]
            for j in range(k + 1, n):
                rowi[j] = (rowi[j] * pk - mik * rowk[j]) // prev
        prev = pk
    return sign * m[n - 1][n - 1]


def sylvester_matrix(f: Sequence, g: Sequence) -> list[list]:
    """Sylvester matrix of two dense polynomials (entries may be any ring values)."""
    m, n = len(f) - 1, len(g) - 1
    size = m + n
    rows = []
    for i in range(n):
        row = [0] * size
        for k, c in enumerate(reversed(f)):
            row[i + k] = c
        rows.append(row)
    for i in range(m):
        row = [0] * size
        for k, c in enumerate(reversed(g)):
            row[i + k] = c
        rows.append(row)
    return rows


def uresultant(f: Sequence, g: Sequence):
    f, g = utrim(f), utrim(g)
    if not f or not g:
        raise ValueError("resultant of the zero polynomial")
    if len(f) == 1 and len(g) == 1:
        return Fraction(1)
    return udet(sylvester_matrix(f, g))


def uinterpolate(xs: Sequence, ys: Sequence) -> list:
    """Newton interpolation over Q."""
    n = len(xs)
    coef = list(ys)
    for j in range(1, n):
        for i in range(n - 1, j - 1, -1):
            coef[i] = (coef[i] - coef[i - 1]) / (xs[i] - xs[i - j])
    out: list = [coef[-1]]
    for i in range(n - 2, -1, -1):
        out = uadd(umul(out, [-xs[i], Fraction(1)]), [coef[i]])
    return utrim(out)


def ustr(a: Sequence, var: str = "t") -> str:
    if not a:
        return "0"
    parts = []
    for k in range(len(a) - 1, -1, -1):
        c = a[k]
        if not c:
            continue
        if isinstance(c, AlgNum):
            if not c.is_rational_rep():
                body = "(" + ustr(c.coeffs, "s") + ")"
                if k:
                    body += "*" + (var if k == 1 else f"{var}^{k}")
                parts.append(("+", body))
                continue
            c = c.rational()
        c = Fraction(c)
        mag = abs(c)
        sign = "-" if c < 0 else "+"
        if k == 0:
            body = str(mag)
        else:
            mono = var if k == 1 else f"{var}^{k}"
            body = mono if mag == 1 else f"{mag}*{mono}"
        parts.append((sign, body))
    head_sign, head = parts[0]
    text = ("-" if head_sign == "-" else "") + head
    for sign, body in parts[1:]:
        text += f"{sign}{body}"
    return text


# ---------------------------------------------------------------------------
# algebraic contexts


class ZeroDivisorSplit(ArithmeticError):
    """A zero divisor was met in ``context``; ``factors`` are coprime and multiply to its modulus."""

    def __init__(self, context: "AlgebraicContext", factors: list[list]):
        super().__init__(f"modulus {ustr(context.modulus)} splits")
        self.context = context
        self.factors = factors

    def children(self) -> list["AlgebraicContext"]:
        return [self.context.child(f) for f in self.factors]


class AlgebraicContext:
    """The ring Q[t]/(q) for a monic squarefree ``q`` of positive degree."""

    __slots__ = ("modulus", "lineage", "_key")

    def __init__(self, modulus: Sequence, lineage: tuple = ()):
        q = utrim(Fraction(c) for c in modulus)
        if len(q) < 2:
            raise ValueError("modulus must have positive degree")
        q = umonic(q)
        if len(ugcd(q, uderiv(q))) > 1:
            raise ValueError(f"modulus {ustr(q)} is not squarefree")
        self.modulus = q
        self.lineage = tuple(lineage)
        self._key = tuple(q)

    @property
    def degree(self) -> int:
        return len(self.modulus) - 1

    def child(self, factor: Sequence) -> "AlgebraicContext":
        return AlgebraicContext(factor, self.lineage + (tuple(self.modulus),))

    def __eq__(self, other):
        return isinstance(other, AlgebraicContext) and self._key == other._key

    def __hash__(self):
        return hash(self._key)

    def __repr__(self):
        return f"AlgebraicContext({ustr(self.modulus)})"

    def __call__(self, value) -> "AlgNum":
        """Coerce a rational, a coefficient list, or an element of an ancestor context."""
        if isinstance(value, AlgNum):
            if value.ctx == self:
                return value
            return AlgNum(self, value.coeffs)
        if isinstance(value, (list, tuple)):
            return AlgNum(self, value)
        return AlgNum(self, [Fraction(value)])

    @property
    def gen(self) -> "AlgNum":
        return AlgNum(self, [Fraction(0), Fraction(1)])


def _reduce(coeffs: Sequence, q: list) -> tuple:
    c = utrim(Fraction(x) for x in coeffs)
    if len(c) >= len(q):
        c = dense_divmod(c, q, Fraction(1))[1]
    return tuple(c)


class AlgNum:
    """Residue class modulo the context modulus, stored fully reduced."""

    __slots__ = ("ctx", "coeffs")

    def __init__(self, ctx: AlgebraicContext, coeffs: Sequence):
        self.ctx = ctx
        self.coeffs = _reduce(coeffs, ctx.modulus)

    def _wrap(self, other):
        if isinstance(other, AlgNum):
            if other.ctx == self.ctx:
                return other
            return self.ctx(other)
        if isinstance(other, (int, Fraction)):
            return AlgNum(self.ctx, [Fraction(other)])
        return NotImplemented

    def __add__(self, other):
        o = self._wrap(other)
        if o is NotImplemented:
            return o
        return AlgNum(self.ctx, uadd(self.coeffs, o.coeffs))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._wrap(other)
        if o is NotImplemented:
            return o
        return AlgNum(self.ctx, usub(self.coeffs, o.coeffs))

    def __rsub__(self, other):
        o = self._wrap(other)
        if o is NotImplemented:
            return o
        return AlgNum(self.ctx, usub(o.coeffs, self.coeffs))

    def __neg__(self):
        return AlgNum(self.ctx, [-c for c in self.coeffs])

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return AlgNum(self.ctx, [c * other for c in self.coeffs])
        o = self._wrap(other)
        if o is NotImplemented:
            return o
        return AlgNum(self.ctx, umul(self.coeffs, o.coeffs))

    __rmul__ = __mul__

    def inverse(self) -> "AlgNum":
        if not self.coeffs:
            raise ZeroDivisionError("inverse of zero")
        q = self.ctx.modulus
        g, s, _ = uegcd(list(self.coeffs), q)
        if len(g) > 1:
            raise ZeroDivisorSplit(self.ctx, [g, uquo(q, g)])
        return AlgNum(self.ctx, s)

    def __truediv__(self, other):
        o = self._wrap(other)
        if o is NotImplemented:
            return o
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._wrap(other)
        if o is NotImplemented:
            return o
        return o * self.inverse()

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        out = AlgNum(self.ctx, [Fraction(1)])
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __bool__(self):
        return bool(self.coeffs)

    def __eq__(self, other):
        if isinstance(other, AlgNum):
            return self.ctx == other.ctx and self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            if not other:
                return not self.coeffs
            return self.coeffs == (Fraction(other),)
        return NotImplemented

    def __hash__(self):
        if len(self.coeffs) <= 1:
            return hash(self.coeffs[0] if self.coeffs else 0)
        return hash((self.ctx, self.coeffs))

    def is_rational_rep(self) -> bool:
        return len(self.coeffs) <= 1

    def rational(self) -> Fraction:
        if len(self.coeffs) > 1:
            raise ValueError("not a rational representative")
        return self.coeffs[0] if self.coeffs else Fraction(0)

    def __str__(self):
        return scalar_str(self)

    def __repr__(self):
        return f"AlgNum({ustr(self.coeffs)} mod {ustr(self.ctx.modulus)})"


Scalar = "Fraction | AlgNum"


def scalar_str(x, var: str = "t") -> str:
    """Exact string form: ``3/2`` or ``t+1 mod t^2-2``."""
    if isinstance(x, AlgNum):
        if x.ctx.degree == 1 or len(x.coeffs) <= 1:
            return str(x.coeffs[0] if x.coeffs else Fraction(0))
        return f"{ustr(x.coeffs, var)} mod {ustr(x.ctx.modulus, var)}"
    return str(Fraction(x))


def context_of(*values) -> AlgebraicContext | None:
    for v in values:
        if isinstance(v, AlgNum):
            return v.ctx
    return None


def coerce(x, ctx: AlgebraicContext | None):
    if ctx is None:
        if isinstance(x, AlgNum):
            return x.rational()
        return Fraction(x)
    return ctx(x)


def over_branches(fn: Callable[[AlgebraicContext | None], T], ctx: AlgebraicContext | None) -> list[tuple[AlgebraicContext | None, T]]:
    """Run ``fn(ctx)``, rerunning on the factor contexts whenever ``ctx`` splits."""
    try:
        return [(ctx, fn(ctx))]
    except ZeroDivisorSplit as exc:
        if ctx is None or exc.context != ctx:
            raise
        out = []
        for child in exc.children():
            out.extend(over_branches(fn, child))
        return out


# ---------------------------------------------------------------------------
# rationality of context values


def _divisors(n: int) -> list[int]:
    n = abs(n)
    small, large = [], []
    for d in range(1, isqrt(n) + 1):
        if n % d == 0:
            small.append(d)
            if d * d != n:
                large.append(n // d)
    return small + large[::-1]


def rational_roots(poly: Sequence) -> list[Fraction]:
    """All rational roots of a nonzero polynomial over Q, sorted."""
    p = utrim(Fraction(c) for c in poly)
    if not p:
        raise ValueError("rational roots of zero")
    roots = set()
    if not p[0]:
        roots.add(Fraction(0))
        while p and not p[0]:
            p = p[1:]
    if len(p) <= 1:
        return sorted(roots)
    den = 1
    for c in p:
        den = den * c.denominator // igcd(den, c.denominator)
    ints = [int(c * den) for c in p]
    for a in _divisors(ints[0]):
        for b in _divisors(ints[-1]):
            for cand in (Fraction(a, b), Fraction(-a, b)):
                if cand not in roots and not ueval(p, cand):
                    roots.add(cand)
    return sorted(roots)


def charpoly_of(x: AlgNum) -> list[Fraction]:
    """Characteristic polynomial over Q of multiplication by ``x``."""
    k = x.ctx.degree
    cols = []
    basis = AlgNum(x.ctx, [Fraction(1)])
    t = x.ctx.gen
    for _ in range(k):
        v = (x * basis).coeffs
        cols.append(list(v) + [Fraction(0)] * (k - len(v)))
        basis = basis * t
    m = [[cols[j][i] for j in range(k)] for i in range(k)]
    # the characteristic polynomial has degree k; interpolate det(s*I - M)
    xs = [Fraction(i) for i in range(k + 1)]
    ys = []
    for s in xs:
        ys.append(udet([[(s if i == j else 0) - m[i][j] for j in range(k)] for i in range(k)]))
    return uinterpolate(xs, ys)


def rational_value(x) -> Fraction | None:
    """The rational value of ``x`` or None if ``x`` is irrational on its context.

    Raises ZeroDivisorSplit when ``x`` is rational on some branches only, or
    takes several rational values, so that callers rerun per branch.
    """
    if not isinstance(x, AlgNum):
        return Fraction(x)
    if x.is_rational_rep():
        return x.rational()
    q = x.ctx.modulus
    for c in rational_roots(charpoly_of(x)):
        g = ugcd(q, usub(list(x.coeffs), [c]))
        if 1 < len(g) < len(q):
            raise ZeroDivisorSplit(x.ctx, [g, uquo(q, g)])
    return None


def is_zero(x) -> bool:
    return not x
