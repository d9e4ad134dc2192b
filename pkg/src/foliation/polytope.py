"""Lattice polygons: hulls, Newton polygons, sides, Minkowski sums and mixed areas."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Iterable, Sequence

Point = tuple


def _cross(o, a, b):
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def _norm(p) -> Point:
    return tuple(int(v) if Fraction(v).denominator == 1 else Fraction(v) for v in p)


@dataclass(frozen=True)
class Polytope2:
    """Convex polygon: counterclockwise vertices starting at the lexicographic minimum."""

    vertices: tuple

    @property
    def dimension(self) -> int:
        return min(len(self.vertices) - 1, 2)

    def is_point(self) -> bool:
        return len(self.vertices) == 1

    def is_segment(self) -> bool:
        return len(self.vertices) == 2

    def area(self) -> Fraction:
        v = self.vertices
        if len(v) < 3:
            return Fraction(0)
        s = 0
        for i in range(len(v)):
            x0, y0 = v[i]
            x1, y1 = v[(i + 1) % len(v)]
            s += x0 * y1 - x1 * y0
        return Fraction(s, 2)

    def edges(self) -> list[tuple[Point, Point]]:
        v = self.vertices
        if len(v) == 1:
            return []
        if len(v) == 2:
            return [(v[0], v[1]), (v[1], v[0])]
        return [(v[i], v[(i + 1) % len(v)]) for i in range(len(v))]

    def sides(self) -> list["Side"]:
        """Sides as lattice segments; a segment polygon has one side, a point none."""
        v = self.vertices
        if len(v) == 1:
            return []
        if len(v) == 2:
            return [Side.through(v[0], v[1])]
        return [Side.through(a, b) for a, b in self.edges()]

    def contains(self, p) -> bool:
        v = self.vertices
        if len(v) == 1:
            return tuple(p) == v[0]
        if len(v) == 2:
            a, b = v
            if _cross(a, b, p) != 0:
                return False
            return min(a[0], b[0]) <= p[0] <= max(a[0], b[0]) and min(a[1], b[1]) <= p[1] <= max(a[1], b[1])
        return all(_cross(v[i], v[(i + 1) % len(v)], p) >= 0 for i in range(len(v)))


def convex_hull(points: Iterable[Sequence]) -> Polytope2:
    pts = sorted({_norm(p) for p in points})
    if not pts:
        raise ValueError("hull of no points")
    if len(pts) <= 2:
        return Polytope2(tuple(pts))

    def half(seq):
        out: list = []
        for p in seq:
            while len(out) >= 2 and _cross(out[-2], out[-1], p) <= 0:
                out.pop()
            out.append(p)
        return out

    lower = half(pts)
    upper = half(reversed(pts))
    hull = lower[:-1] + upper[:-1]
    if len(hull) == 2 or all(_cross(hull[0], hull[1], p) == 0 for p in hull):
        return Polytope2((pts[0], pts[-1]))
    return Polytope2(tuple(hull))


def _edge_key(d):
    dx, dy = d
    upper = dx > 0 or (dx == 0 and dy > 0)
    return 0 if upper else 1


def _edge_sort(edges: list) -> list:
    import functools

    def cmp(a, b):
        ha, hb = _edge_key(a), _edge_key(b)
        if ha != hb:
            return ha - hb
        c = a[0] * b[1] - a[1] * b[0]
        return -1 if c > 0 else (1 if c < 0 else 0)

    return sorted(edges, key=functools.cmp_to_key(cmp))


def minkowski_sum(p: Polytope2, q: Polytope2) -> Polytope2:
    """Minkowski sum by merging edge vectors in angular order."""
    ev = []
    for poly in (p, q):
        for a, b in poly.edges():
            ev.append((b[0] - a[0], b[1] - a[1]))
    start = (p.vertices[0][0] + q.vertices[0][0], p.vertices[0][1] + q.vertices[0][1])
    walk = [start]
    cur = start
    for d in _edge_sort(ev):
        cur = (cur[0] + d[0], cur[1] + d[1])
        walk.append(cur)
    return convex_hull(walk)


def mixed_area(p: Polytope2, q: Polytope2) -> Fraction:
    """``Ar(p+q) - Ar(p) - Ar(q)``."""
    return minkowski_sum(p, q).area() - p.area() - q.area()


# ---------------------------------------------------------------------------
# sides and weights


def weight_of_direction(dx: int, dy: int) -> tuple[int, int]:
    """Weight vector in W vanishing on the direction ``(dx, dy)``."""
    g = gcd(int(dx), int(dy))
    if g == 0:
        raise ValueError("zero direction")
    p, q = -int(dy) // g, int(dx) // g
    if q < 0 or (q == 0 and p < 0):
        p, q = -p, -q
    if q == 0:
        return (1, 0)
    return (p, q)


@dataclass(frozen=True)
class Side:
    """Lattice segment with its weight ``(p, q)`` and slope ``-p/q`` (None when vertical)."""

    a: Point
    b: Point
    weight: tuple
    slope: Fraction | None

    @classmethod
    def through(cls, a, b) -> "Side":
        a, b = _norm(a), _norm(b)
        if a == b:
            raise ValueError("a side needs two distinct endpoints")
        if b < a:
            a, b = b, a
        p, q = weight_of_direction(b[0] - a[0], b[1] - a[1])
        slope = None if q == 0 else Fraction(-p, q)
        return cls(a, b, (p, q), slope)

    @property
    def degree(self) -> int:
        p, q = self.weight
        return p * self.a[0] + q * self.a[1]

    def contains(self, e) -> bool:
        return Polytope2((self.a, self.b)).contains(e)

    def lattice_points(self) -> list[Point]:
        dx, dy = self.b[0] - self.a[0], self.b[1] - self.a[1]
        g = gcd(dx, dy)
        return [(self.a[0] + k * dx // g, self.a[1] + k * dy // g) for k in range(g + 1)]


@dataclass(frozen=True)
class NewtonPolygon:
    """Vertex chain of ``hull(S + R^2_{>=0})``; the ends emit the axis-parallel rays."""

    vertices: tuple
    sides: tuple = field(default=())

    def is_orthant(self) -> bool:
        return len(self.vertices) == 1 and self.vertices[0] == (0, 0)

    def slopes(self) -> list[Fraction]:
        return [s.slope for s in self.sides]

    def swapped(self) -> "NewtonPolygon":
        return newton_polygon_of_points([(b, a) for a, b in self.vertices])

    def contains(self, p) -> bool:
        for v in self.vertices:
            if p[0] >= v[0] and p[1] >= v[1]:
                return True
        for s in self.sides:
            if s.a[0] <= p[0] <= s.b[0] and _cross(s.a, s.b, p) >= 0:
                return True
        return False


def newton_polygon_of_points(points: Iterable[Sequence]) -> NewtonPolygon:
    pts = {_norm(p) for p in points}
    if not pts:
        raise ValueError("Newton polygon of no points")
    best: dict = {}
    for x, y in pts:
        if x not in best or y < best[x]:
            best[x] = y
    xs = sorted(best)
    stair = []
    low = None
    for x in xs:
        if low is None or best[x] < low:
            stair.append((x, best[x]))
            low = best[x]
    chain: list = []
    for p in stair:
        while len(chain) >= 2 and _cross(chain[-2], chain[-1], p) <= 0:
            chain.pop()
        chain.append(p)
    sides = tuple(Side.through(chain[i], chain[i + 1]) for i in range(len(chain) - 1))
    # sides go from the top-left vertex down to the bottom-right one
    sides = tuple(sorted(sides, key=lambda s: s.a[0]))
    return NewtonPolygon(tuple(chain), sides)


def newton_polygon(f) -> NewtonPolygon:
    if not f:
        raise ValueError("Newton polygon of zero")
    if f.is_laurent():
        raise ValueError("Newton polygon of a Laurent polynomial")
    return newton_polygon_of_points(f.terms)


def polygon_of(*polys) -> Polytope2:
    """``Delta`` of one polynomial or the joint hull of several."""
    pts = [e for f in polys for e in f.terms]
    return convex_hull(pts)


def support_restriction(f, c):
    """Terms of ``f`` whose exponents lie in ``c`` (a Side or a point collection)."""
    if isinstance(c, Side):
        return f.restrict([e for e in f.terms if c.contains(e)])
    return f.restrict(c)


def homogeneous_segment_projection(points: Iterable[Sequence[int]], i: int) -> Polytope2:
    """Image of a set in ``d*Sigma_3`` under dropping coordinate ``i``."""
    pts = [tuple(p) for p in points]
    if not pts:
        raise ValueError("no points")
    d = sum(pts[0])
    for p in pts:
        if len(p) != 3 or any(v < 0 for v in p) or sum(p) != d:
            raise ValueError(f"point {p} is not in {d}*Sigma_3")
    j, k = [x for x in range(3) if x != i]
    return convex_hull([(p[j], p[k]) for p in pts])


# ---------------------------------------------------------------------------
# rendering


def render_ascii(points: Iterable[Sequence[int]], hull: Polytope2 | NewtonPolygon | None = None) -> str:
    """Grid with 'o' at hull vertices, '*' at other support points, '#' at other
    lattice points on the boundary and '.' elsewhere; rows are printed top down."""
    pts = {tuple(int(v) for v in p) for p in points}
    if hull is None:
        hull = convex_hull(pts)
    verts = set(hull.vertices)
    edge_pts = set()
    sides = hull.sides if isinstance(hull, NewtonPolygon) else hull.sides()
    for s in sides:
        edge_pts.update(s.lattice_points())
    allp = pts | verts
    xmax = max(max(p[0] for p in allp), 0)
    ymax = max(max(p[1] for p in allp), 0)
    xmin = min(min(p[0] for p in allp), 0)
    ymin = min(min(p[1] for p in allp), 0)
    width = max(len(str(ymax)), len(str(ymin)))
    lines = []
    for y in range(ymax, ymin - 1, -1):
        row = []
        for x in range(xmin, xmax + 1):
            p = (x, y)
            if p in verts:
                row.append("o")
            elif p in pts:
                row.append("*")
            elif p in edge_pts:
                row.append("#")
            else:
                row.append(".")
        lines.append(f"{y:>{width}} | " + " ".join(row))
    lines.append(" " * width + " +-" + "--" * (xmax - xmin + 1))
    lines.append(" " * (width + 3) + " ".join(str(x % 10) for x in range(xmin, xmax + 1)))
    return "\n".join(lines)
