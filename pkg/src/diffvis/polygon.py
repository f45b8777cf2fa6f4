"""Simple polygons, boundary addressing and first-hit ray queries."""
from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from enum import Enum
from functools import cached_property
from typing import Iterable, Sequence

from .kernel import (
    PointHit,
    Overlap,
    Point,
    Q,
    Ray,
    format_q,
    intersect_segments,
    lerp,
    on_closed_segment,
    orient_sign,
    param_on,
    ray_line_param,
)


class PolygonError(ValueError):
    pass


class RayEscapes(ValueError):
    pass


class EndpointNotOnBoundary(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class SimplePolygon:
    """Counterclockwise vertex cycle. Construction does not validate; call :func:`validate`."""

    vertices: tuple

    def __init__(self, vertices: Iterable):
        object.__setattr__(self, "vertices", tuple(Point(Q(v[0]), Q(v[1])) for v in vertices))

    @property
    def n(self) -> int:
        return len(self.vertices)

    def __eq__(self, other):
        return isinstance(other, SimplePolygon) and self.vertices == other.vertices

    def __hash__(self):
        return hash(self.vertices)

    def __len__(self):
        return len(self.vertices)

    def __iter__(self):
        return iter(self.vertices)

    def __getitem__(self, i):
        return self.vertices[i % len(self.vertices)]

    def edge(self, i: int):
        n = len(self.vertices)
        return self.vertices[i % n], self.vertices[(i + 1) % n]

    @cached_property
    def edges(self) -> tuple:
        n = len(self.vertices)
        return tuple((self.vertices[i], self.vertices[(i + 1) % n]) for i in range(n))

    @cached_property
    def signed_area(self):
        vs = self.vertices
        n = len(vs)
        acc = Q(0)
        for i in range(n):
            x0, y0 = vs[i]
            x1, y1 = vs[(i + 1) % n]
            acc += x0 * y1 - x1 * y0
        return acc / 2

    @cached_property
    def bbox(self):
        xs = [v.x for v in self.vertices]
        ys = [v.y for v in self.vertices]
        return min(xs), min(ys), max(xs), max(ys)

    @cached_property
    def reflex(self) -> tuple:
        """Indices of reflex vertices (interior angle > pi). Assumes CCW order."""
        vs = self.vertices
        n = len(vs)
        return tuple(i for i in range(n) if orient_sign(vs[i - 1], vs[i], vs[(i + 1) % n]) < 0)

    @cached_property
    def vertex_index(self) -> dict:
        return {v: i for i, v in enumerate(self.vertices)}

    def is_convex(self) -> bool:
        return not self.reflex

    def transformed(self, fn) -> "SimplePolygon":
        return SimplePolygon(fn(v) for v in self.vertices)

    def to_json(self) -> dict:
        return {"vertices": [[format_q(v.x), format_q(v.y)] for v in self.vertices]}

    def dumps(self) -> str:
        return json.dumps(self.to_json())

    @classmethod
    def from_json(cls, data) -> "SimplePolygon":
        if isinstance(data, str):
            data = json.loads(data)
        try:
            verts = data["vertices"]
            poly = cls((Q(str(x)), Q(str(y))) for x, y in verts)
        except (KeyError, TypeError, ValueError) as exc:
            raise PolygonError(f"malformed polygon JSON: {exc}") from exc
        report = validate(poly)
        if not report.valid:
            raise PolygonError("invalid polygon: " + "; ".join(report.problems()))
        return poly


@dataclass(frozen=True)
class BoundaryPoint:
    edge: int
    t: object

    def __post_init__(self):
        t = Q(self.t)
        object.__setattr__(self, "t", t)
        if not 0 <= t <= 1:
            raise ValueError(f"boundary parameter {t} outside [0, 1]")

    def canonical(self, n: int) -> "BoundaryPoint":
        if self.t == 1:
            return BoundaryPoint((self.edge + 1) % n, 0)
        return BoundaryPoint(self.edge % n, self.t)

    def point(self, poly: SimplePolygon) -> Point:
        a, b = poly.edge(self.edge)
        return lerp(a, b, self.t)

    @property
    def at_vertex(self) -> bool:
        return self.t == 0 or self.t == 1

    def to_json(self):
        return [self.edge, format_q(self.t)]


@dataclass(frozen=True)
class BoundaryArc:
    start: BoundaryPoint
    end: BoundaryPoint


@dataclass
class ValidationReport:
    n: int
    ccw: bool
    crossings: list = field(default_factory=list)
    collinear_triples: list = field(default_factory=list)
    degenerate: list = field(default_factory=list)

    @property
    def simple(self) -> bool:
        return not self.crossings and not self.degenerate and self.n >= 3

    @property
    def valid(self) -> bool:
        return self.simple and self.ccw

    @property
    def general_position(self) -> bool:
        return not self.collinear_triples

    def problems(self) -> list:
        out = []
        if self.n < 3:
            out.append(f"need at least 3 vertices, got {self.n}")
        for i in self.degenerate:
            out.append(f"repeated consecutive vertex at index {i}")
        for i, j in self.crossings:
            out.append(f"edges {i} and {j} intersect")
        if not self.ccw:
            out.append("vertices are not in counterclockwise order")
        return out

    def to_json(self) -> dict:
        return {
            "valid": self.valid,
            "simple": self.simple,
            "ccw": self.ccw,
            "general_position": self.general_position,
            "crossings": [list(c) for c in self.crossings],
            "collinear_triples": [list(t) for t in self.collinear_triples],
        }


def validate(poly: SimplePolygon) -> ValidationReport:
    vs = poly.vertices
    n = len(vs)
    report = ValidationReport(n=n, ccw=n >= 3 and poly.signed_area > 0)
    if n < 3:
        return report
    report.degenerate = [i for i in range(n) if vs[i] == vs[(i + 1) % n]]
    if report.degenerate:
        return report
    edges = poly.edges
    for i in range(n):
        for j in range(i + 1, n):
            hit = intersect_segments(edges[i], edges[j])
            if not hit:
                continue
            adjacent_ij = j == i + 1
            adjacent_ji = i == 0 and j == n - 1
            if isinstance(hit, Overlap):
                report.crossings.append((i, j))
            elif adjacent_ij and hit.point == vs[j] and n > 2:
                continue
            elif adjacent_ji and hit.point == vs[0]:
                continue
            else:
                report.crossings.append((i, j))
    report.collinear_triples = [
        (i, j, k)
        for i, j, k in itertools.combinations(range(n), 3)
        if orient_sign(vs[i], vs[j], vs[k]) == 0
    ]
    return report


class Location(Enum):
    INTERIOR = "interior"
    BOUNDARY = "boundary"
    EXTERIOR = "exterior"


def locate_on_boundary(poly: SimplePolygon, p) -> BoundaryPoint | None:
    """Canonical boundary address of p, or None if p is not on bd(P)."""
    for i, (a, b) in enumerate(poly.edges):
        if on_closed_segment(a, b, p):
            t = param_on(a, b, p)
            return BoundaryPoint(i, t).canonical(poly.n)
    return None


def point_in_ring(ring: Sequence, p) -> int:
    """+1 inside, 0 on boundary, -1 outside (crossing number, exact)."""
    px, py = p
    inside = False
    n = len(ring)
    for i in range(n):
        a = ring[i]
        b = ring[(i + 1) % n]
        if on_closed_segment(a, b, p):
            return 0
        ay, by = a[1], b[1]
        if (ay > py) != (by > py):
            o = orient_sign(a, b, p)
            if (o > 0) == (by > ay):
                inside = not inside
    return 1 if inside else -1


def classify_point(poly: SimplePolygon, p):
    """Return (Location, BoundaryPoint | None)."""
    p = Point(Q(p[0]), Q(p[1]))
    bp = locate_on_boundary(poly, p)
    if bp is not None:
        return Location.BOUNDARY, bp
    return (Location.INTERIOR if point_in_ring(poly.vertices, p) > 0 else Location.EXTERIOR), None


def in_closed(poly: SimplePolygon, p) -> bool:
    return point_in_ring(poly.vertices, p) >= 0


def in_interior(poly: SimplePolygon, p) -> bool:
    return point_in_ring(poly.vertices, p) > 0


def boundary_arc_points(poly: SimplePolygon, arc: BoundaryArc) -> list:
    """Polyline of bd(from, to) walked counterclockwise."""
    n = poly.n
    for bp in (arc.start, arc.end):
        if not isinstance(bp, BoundaryPoint):
            raise EndpointNotOnBoundary(f"{bp!r} is not a BoundaryPoint")
    s = arc.start.canonical(n)
    e = arc.end.canonical(n)
    ps, pe = s.point(poly), e.point(poly)
    if ps == pe:
        return [ps]
    if s.edge == e.edge and e.t > s.t:
        return [ps, pe]
    chain = [ps]
    i = (s.edge + 1) % n
    while True:
        v = poly.vertices[i]
        if v != chain[-1]:
            chain.append(v)
        if i == e.edge:
            break
        i = (i + 1) % n
    if pe != chain[-1]:
        chain.append(pe)
    return chain


def ray_shoot(poly: SimplePolygon, ray) -> BoundaryPoint:
    """First point of bd(P) strictly beyond the ray origin.

    A hit exactly at vertex i is reported as ``BoundaryPoint(i - 1, 1)``.
    """
    o, through = ray
    o = Point(Q(o[0]), Q(o[1]))
    if point_in_ring(poly.vertices, o) < 0:
        raise RayEscapes(f"ray origin {o!r} lies outside the polygon")
    d = (through[0] - o[0], through[1] - o[1])
    best = None
    n = poly.n
    for i, (a, b) in enumerate(poly.edges):
        hit = ray_line_param(o, d, a, b)
        if hit is None:
            continue
        t, u = hit
        if t <= 0 or u < 0 or u > 1:
            continue
        if best is None or t < best[0] or (t == best[0] and u == 1):
            best = (t, i, u)
    if best is None:
        raise RayEscapes("ray never meets the boundary")
    t, i, u = best
    if u == 0:
        return BoundaryPoint((i - 1) % n, 1)
    return BoundaryPoint(i, u)


def ray_shoot_point(poly: SimplePolygon, origin, through) -> Point:
    return ray_shoot(poly, Ray(Point(*origin), Point(*through))).point(poly)
