"""Direct visibility: point-to-point sight tests, V(s), and weak visibility from an edge piece.

Visibility regions are computed by overlaying every candidate window chord on
the polygon and labelling the resulting cells with an exact sight test. A
window of V(s) lies on a line through s and a reflex vertex; a window of the
weak visibility region of a segment lies on a line through a reflex vertex and
either a segment endpoint or a second reflex vertex.
"""
from __future__ import annotations

from dataclasses import dataclass

from .arrangement import Arrangement
from .kernel import Point, Q, lerp, on_closed_segment, orient_sign, param_on
from .polygon import RayEscapes, SimplePolygon, in_closed, in_interior, point_in_ring, ray_shoot
from .regions import Region, region_from_labels


class SourceOutside(ValueError):
    pass


class SegmentNotOnEdgeInterior(ValueError):
    pass


def _blocks(x, y, u, v) -> bool:
    """Does the closed edge uv meet the open segment xy?"""
    o1 = orient_sign(x, y, u)
    o2 = orient_sign(x, y, v)
    if o1 * o2 > 0:
        return False
    if o1 == 0 and o2 == 0:
        dx, dy = y[0] - x[0], y[1] - x[1]
        ll = dx * dx + dy * dy
        tu = (u[0] - x[0]) * dx + (u[1] - x[1]) * dy
        tv = (v[0] - x[0]) * dx + (v[1] - x[1]) * dy
        lo, hi = min(tu, tv), max(tu, tv)
        return hi > 0 and lo < ll
    o3 = orient_sign(u, v, x)
    o4 = orient_sign(u, v, y)
    return o3 * o4 < 0


def sees(poly: SimplePolygon, x, y) -> bool:
    """True iff the open segment xy lies in int(P); ``sees(P, x, x)`` is membership in closed P."""
    if x == y:
        return in_closed(poly, x)
    for u, v in poly.edges:
        if _blocks(x, y, u, v):
            return False
    return point_in_ring(poly.vertices, ((x[0] + y[0]) / 2, (x[1] + y[1]) / 2)) > 0


def sees_closed(poly: SimplePolygon, x, y) -> bool:
    """True iff the closed segment xy lies in closed P (grazing the boundary allowed)."""
    cuts = {Q(0), Q(1)}
    for u, v in poly.edges:
        o1 = orient_sign(x, y, u)
        o2 = orient_sign(x, y, v)
        if o1 * o2 > 0:
            continue
        o3 = orient_sign(u, v, x)
        o4 = orient_sign(u, v, y)
        if o1 * o2 < 0 and o3 * o4 < 0:
            return False
        for w, o in ((u, o1), (v, o2)):
            if o == 0 and on_closed_segment(x, y, w):
                cuts.add(param_on(x, y, w))
    ts = sorted(cuts)
    for t0, t1 in zip(ts, ts[1:]):
        if point_in_ring(poly.vertices, lerp(x, y, (t0 + t1) / 2)) < 0:
            return False
    return True


def _clip_to_triangle(u, v, tri):
    """Closed piece of segment uv inside the CCW triangle ``tri``, as (s0, s1) parameters, or None."""
    s0, s1 = Q(0), Q(1)
    for i in range(3):
        p, q = tri[i], tri[(i + 1) % 3]
        ou = (q[0] - p[0]) * (u[1] - p[1]) - (q[1] - p[1]) * (u[0] - p[0])
        ov = (q[0] - p[0]) * (v[1] - p[1]) - (q[1] - p[1]) * (v[0] - p[0])
        if ou < 0 and ov < 0:
            return None
        if ou >= 0 and ov >= 0:
            continue
        s = ou / (ou - ov)
        if ou < 0:
            s0 = max(s0, s)
        else:
            s1 = min(s1, s)
        if s0 > s1:
            return None
    return s0, s1


def visible_intervals(poly: SimplePolygon, y, a, b) -> list:
    """Open parameter intervals (lo, hi) of segment ab, lying on bd(P), that y sees.

    For a degenerate segment (a == b) returns ``[(0, 0)]`` when y sees a.
    """
    if a == b:
        return [(Q(0), Q(0))] if y != a and sees(poly, y, a) else []
    if orient_sign(a, b, y) == 0:
        return []
    tri = (y, a, b) if orient_sign(y, a, b) > 0 else (y, b, a)
    ex, ey = b[0] - a[0], b[1] - a[1]
    yax, yay = y[0] - a[0], y[1] - a[1]
    shadows = []
    for u, v in poly.edges:
        if on_closed_segment(u, v, a) and on_closed_segment(u, v, b):
            continue
        clip = _clip_to_triangle(u, v, tri)
        if clip is None:
            continue
        ts = []
        for s in clip:
            c = lerp(u, v, s)
            if c == y:
                continue
            dx, dy = c[0] - y[0], c[1] - y[1]
            ts.append((yax * dy - yay * dx) / (ex * dy - ey * dx))
        if ts:
            shadows.append((min(ts), max(ts)))
    shadows.sort()
    out = []
    cur = Q(0)
    for lo, hi in shadows:
        if lo > cur:
            out.append((cur, min(lo, Q(1))))
        if hi > cur:
            cur = hi
        if cur >= 1:
            break
    if cur < 1:
        out.append((cur, Q(1)))
    good = []
    for lo, hi in out:
        if lo >= hi:
            continue
        m = lerp(a, b, (lo + hi) / 2)
        if sees(poly, y, m):
            good.append((lo, hi))
    return good


def sees_segment(poly: SimplePolygon, y, a, b) -> bool:
    """Does y see some point of the open segment ab (or the point a when a == b)?"""
    return bool(visible_intervals(poly, y, a, b))


@dataclass(frozen=True)
class VisPolygon:
    """A simply connected visibility region with its boundary pieces tagged.

    ``elements`` holds ``(p, q, tag)`` with tag ``("LIT", edge)`` for pieces on bd(P)
    and ``("WINDOW",)`` for chords.
    """

    region: Region
    elements: tuple

    @property
    def ring(self):
        return self.region.faces[0].outer if self.region.faces else ()

    def lit_arcs(self) -> list:
        return [(p, q, t[1]) for p, q, t in self.elements if t[0] == "LIT"]

    def windows(self) -> list:
        return [(p, q) for p, q, t in self.elements if t[0] == "WINDOW"]

    def contains(self, p) -> int:
        return self.region.contains(p)


def tag_boundary(poly: SimplePolygon, region: Region) -> tuple:
    elements = []
    for p, q in region.boundary_segments():
        tag = ("WINDOW",)
        for i, (u, v) in enumerate(poly.edges):
            if on_closed_segment(u, v, p) and on_closed_segment(u, v, q):
                tag = ("LIT", i)
                break
        elements.append((p, q, tag))
    return tuple(elements)


def _chord(poly: SimplePolygon, pivot, away_from):
    """Chord from ``pivot`` continuing the direction away_from -> pivot, or None if it leaves P."""
    d = (pivot[0] - away_from[0], pivot[1] - away_from[1])
    try:
        hit = ray_shoot(poly, (pivot, Point(pivot[0] + d[0], pivot[1] + d[1]))).point(poly)
    except RayEscapes:
        return None
    if not sees(poly, pivot, hit):
        return None
    return pivot, hit


class ChordCache:
    """Memoised sight tests and window chords for one polygon."""

    def __init__(self, poly: SimplePolygon):
        self.poly = poly
        self.reflex = [poly.vertices[i] for i in poly.reflex]
        self._sees = {}
        self._closed = {}
        self._chords = {}
        self._pairs = None

    def sees(self, x, y) -> bool:
        key = (x, y) if x <= y else (y, x)
        hit = self._sees.get(key)
        if hit is None:
            hit = self._sees[key] = sees(self.poly, x, y)
        return hit

    def sees_closed(self, x, y) -> bool:
        key = (x, y) if x <= y else (y, x)
        hit = self._closed.get(key)
        if hit is None:
            hit = self._closed[key] = sees_closed(self.poly, x, y)
        return hit

    def chord(self, pivot, away_from):
        key = (pivot, away_from)
        if key not in self._chords:
            self._chords[key] = _chord(self.poly, pivot, away_from)
        return self._chords[key]

    def point_chords(self, s) -> list:
        out = []
        for r in self.reflex:
            if r != s and self.sees_closed(s, r):
                c = self.chord(r, s)
                if c is not None:
                    out.append(c)
        return out

    def reflex_pairs(self) -> list:
        """Ordered pairs (r1, r2) of mutually visible reflex vertices with a chord beyond r2."""
        if self._pairs is None:
            pairs = []
            for r1 in self.reflex:
                for r2 in self.reflex:
                    if r1 != r2 and self.sees_closed(r1, r2):
                        c = self.chord(r2, r1)
                        if c is not None:
                            pairs.append((r1, r2, c))
            self._pairs = pairs
        return self._pairs

    def segment_chords(self, a, b) -> list:
        if a == b:
            return self.point_chords(a)
        out = self.point_chords(a) + self.point_chords(b)
        for r1, r2, c in self.reflex_pairs():
            # line r2 -> r1 must reach the closed segment ab beyond r1
            o_a = orient_sign(r2, r1, a)
            o_b = orient_sign(r2, r1, b)
            if o_a * o_b > 0:
                continue
            if o_a == 0 and o_b == 0:
                continue
            d = (r1[0] - r2[0], r1[1] - r2[1])
            # pick a point of ab on the line and check it lies past r1
            if o_a == 0:
                x = a
            elif o_b == 0:
                x = b
            else:
                from .kernel import line_intersection

                x = line_intersection(r2, r1, a, b)
            if (x[0] - r1[0]) * d[0] + (x[1] - r1[1]) * d[1] <= 0:
                continue
            out.append(c)
        return out


def _label_direct(arr: Arrangement, test) -> list:
    return [test(arr.face_sample(f)) for f in range(arr.n_faces)]


def visibility_from_point(poly: SimplePolygon, s, cache: ChordCache | None = None) -> VisPolygon:
    """Closed visibility polygon V(s) for s in int(P) or on bd(P)."""
    s = Point(Q(s[0]), Q(s[1]))
    if not in_closed(poly, s):
        raise SourceOutside(f"source {s!r} is outside the polygon")
    cache = cache or ChordCache(poly)
    segs = [(u, v, "P") for u, v in poly.edges]
    segs.extend((p, q, "C") for p, q in cache.point_chords(s))
    arr = Arrangement(segs)
    label = _label_direct(arr, lambda y: sees(poly, s, y))
    region = region_from_labels(arr, label, keep=frozenset(poly.vertices))
    return VisPolygon(region, tag_boundary(poly, region))


def edge_of_segment(poly: SimplePolygon, a, b) -> int:
    for i, (u, v) in enumerate(poly.edges):
        if on_closed_segment(u, v, a) and on_closed_segment(u, v, b):
            if a == b and a in (u, v):
                continue
            return i
    raise SegmentNotOnEdgeInterior(f"segment {a!r}-{b!r} does not lie on an edge of P")


def weak_visibility_from_segment(poly: SimplePolygon, a, b, cache: ChordCache | None = None) -> VisPolygon:
    """Closure of the set of points seeing some point of the open edge piece ab.

    ``a == b`` gives a point reflector, which must lie in an edge interior.
    """
    a = Point(Q(a[0]), Q(a[1]))
    b = Point(Q(b[0]), Q(b[1]))
    edge_of_segment(poly, a, b)
    if a == b:
        return visibility_from_point(poly, a, cache)
    cache = cache or ChordCache(poly)
    segs = [(u, v, "P") for u, v in poly.edges]
    segs.extend((p, q, "C") for p, q in cache.segment_chords(a, b))
    arr = Arrangement(segs)
    label = _label_direct(arr, lambda y: sees_segment(poly, y, a, b))
    region = region_from_labels(arr, label, keep=frozenset(poly.vertices))
    return VisPolygon(region, tag_boundary(poly, region))
