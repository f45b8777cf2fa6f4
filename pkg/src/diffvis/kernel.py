"""Exact rational scalars, points and the predicates everything else is built on.

Every coordinate is a ``gmpy2.mpq``; there is no tolerance anywhere in here.
"""
from __future__ import annotations

from enum import IntEnum
from typing import NamedTuple, Union

from gmpy2 import mpq

Scalar = type(mpq(0))
Number = Union[int, str, "mpq"]


def Q(value) -> "mpq":
    """Coerce ``value`` (int, Fraction, mpq or a ``"p/q"`` string) to an exact rational."""
    if isinstance(value, Scalar):
        return value
    if isinstance(value, float):
        raise TypeError("floats are not accepted as exact coordinates")
    if isinstance(value, str):
        return mpq(value.strip())
    if hasattr(value, "numerator") and hasattr(value, "denominator"):
        return mpq(int(value.numerator), int(value.denominator))
    return mpq(value)


def format_q(value) -> str:
    """Serialize a rational as ``"p/q"``, or ``"p"`` when the denominator is 1."""
    value = Q(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


class Point(NamedTuple):
    x: "mpq"
    y: "mpq"

    @classmethod
    def of(cls, x, y) -> "Point":
        return cls(Q(x), Q(y))

    def __add__(self, other):  # type: ignore[override]
        return Point(self.x + other[0], self.y + other[1])

    def __sub__(self, other):
        return Point(self.x - other[0], self.y - other[1])

    def scale(self, f) -> "Point":
        return Point(self.x * f, self.y * f)

    def __repr__(self) -> str:
        return f"Point({format_q(self.x)}, {format_q(self.y)})"


def P(x, y) -> Point:
    return Point(Q(x), Q(y))


class Orientation(IntEnum):
    CW = -1
    COLLINEAR = 0
    CCW = 1


def cross(ax, ay, bx, by):
    return ax * by - ay * bx


def orient_value(a, b, c):
    """Twice the signed area of triangle abc."""
    return (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0])


def orient_sign(a, b, c) -> int:
    v = orient_value(a, b, c)
    return (v > 0) - (v < 0)


def orient(a, b, c) -> Orientation:
    return Orientation(orient_sign(a, b, c))


def collinear(*pts) -> bool:
    if len(pts) < 3:
        return True
    a = pts[0]
    b = next((p for p in pts[1:] if p != a), None)
    if b is None:
        return True
    return all(orient_sign(a, b, c) == 0 for c in pts[1:])


def dot(a, b, c):
    """(b - a) . (c - a)"""
    return (b[0] - a[0]) * (c[0] - a[0]) + (b[1] - a[1]) * (c[1] - a[1])


def lerp(a, b, t) -> Point:
    return Point(a[0] + (b[0] - a[0]) * t, a[1] + (b[1] - a[1]) * t)


def midpoint(a, b) -> Point:
    return Point((a[0] + b[0]) / 2, (a[1] + b[1]) / 2)


def param_on(a, b, p):
    """Parameter t of point p (assumed on line ab) so that p = a + t (b - a)."""
    if a[0] != b[0]:
        return (p[0] - a[0]) / (b[0] - a[0])
    return (p[1] - a[1]) / (b[1] - a[1])


def on_closed_segment(a, b, p) -> bool:
    if orient_sign(a, b, p) != 0:
        return False
    return min(a[0], b[0]) <= p[0] <= max(a[0], b[0]) and min(a[1], b[1]) <= p[1] <= max(a[1], b[1])


def on_open_segment(a, b, p) -> bool:
    return on_closed_segment(a, b, p) and p != a and p != b


class DegenerateSegment(ValueError):
    pass


class Segment(NamedTuple):
    p: Point
    q: Point

    @classmethod
    def of(cls, p, q) -> "Segment":
        p, q = Point(Q(p[0]), Q(p[1])), Point(Q(q[0]), Q(q[1]))
        if p == q:
            raise DegenerateSegment(f"segment endpoints coincide at {p!r}")
        return cls(p, q)


class Ray(NamedTuple):
    origin: Point
    through: Point

    @classmethod
    def of(cls, origin, through) -> "Ray":
        o, t = Point(Q(origin[0]), Q(origin[1])), Point(Q(through[0]), Q(through[1]))
        if o == t:
            raise DegenerateSegment("ray origin and through point coincide")
        return cls(o, t)


class Empty(NamedTuple):
    pass


class PointHit(NamedTuple):
    point: Point


class Overlap(NamedTuple):
    segment: Segment


def intersect_segments(s1, s2):
    """Exact intersection of two closed segments: Empty(), PointHit(p) or Overlap(seg)."""
    a, b = s1
    c, d = s2
    o1 = orient_sign(a, b, c)
    o2 = orient_sign(a, b, d)
    if o1 == 0 and o2 == 0:
        # collinear: intersect parameter ranges along ab
        if a == b:
            return PointHit(a) if on_closed_segment(c, d, a) else Empty()
        tc, td = param_on(a, b, c), param_on(a, b, d)
        lo, hi = max(min(tc, td), 0), min(max(tc, td), 1)
        if lo > hi:
            return Empty()
        p, q = lerp(a, b, lo), lerp(a, b, hi)
        if lo == hi:
            return PointHit(p)
        return Overlap(Segment(p, q))
    o3 = orient_sign(c, d, a)
    o4 = orient_sign(c, d, b)
    if o1 * o2 > 0 or o3 * o4 > 0:
        return Empty()
    if o1 == 0:
        return PointHit(Point(*c)) if on_closed_segment(a, b, c) else Empty()
    if o2 == 0:
        return PointHit(Point(*d)) if on_closed_segment(a, b, d) else Empty()
    if o3 == 0:
        return PointHit(Point(*a))
    if o4 == 0:
        return PointHit(Point(*b))
    return PointHit(line_intersection(a, b, c, d))


def line_intersection(a, b, c, d) -> Point:
    """Intersection of the (non-parallel) lines ab and cd."""
    rx, ry = b[0] - a[0], b[1] - a[1]
    sx, sy = d[0] - c[0], d[1] - c[1]
    den = rx * sy - ry * sx
    if den == 0:
        raise ValueError("parallel lines")
    t = ((c[0] - a[0]) * sy - (c[1] - a[1]) * sx) / den
    return Point(a[0] + rx * t, a[1] + ry * t)


def ray_line_param(o, direction, a, b):
    """Parameters (t, u) with o + t*direction = a + u*(b - a), or None if parallel."""
    dx, dy = direction
    ex, ey = b[0] - a[0], b[1] - a[1]
    den = dx * ey - dy * ex
    if den == 0:
        return None
    wx, wy = a[0] - o[0], a[1] - o[1]
    t = (wx * ey - wy * ex) / den
    u = (wx * dy - wy * dx) / den
    return t, u


def ray_intersection(r1: Ray, r2: Ray):
    """Intersection point of two rays, or None."""
    d1 = r1.through - r1.origin
    hit = ray_line_param(r1.origin, d1, r2.origin, r2.through)
    if hit is None:
        return None
    t, u = hit
    if t < 0 or u < 0:
        return None
    return lerp(r1.origin, r1.through, t)


def angle_less(d1, d2) -> bool:
    """Strict counterclockwise angular order of direction vectors, starting at angle 0."""
    h1 = 0 if (d1[1] > 0 or (d1[1] == 0 and d1[0] > 0)) else 1
    h2 = 0 if (d2[1] > 0 or (d2[1] == 0 and d2[0] > 0)) else 1
    if h1 != h2:
        return h1 < h2
    return cross(d1[0], d1[1], d2[0], d2[1]) > 0


def angle_key(d):
    """Sort key for directions in counterclockwise order (exact, no trigonometry)."""
    return _AngleKey(d)


class _AngleKey:
    __slots__ = ("d",)

    def __init__(self, d):
        self.d = d

    def __lt__(self, other):
        return angle_less(self.d, other.d)

    def __eq__(self, other):
        return not angle_less(self.d, other.d) and not angle_less(other.d, self.d)
