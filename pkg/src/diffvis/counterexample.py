"""The hole construction: a polygon whose V_2(s) has a triangular hole tqr.

The coordinates live in ``data/counterexample*.json``; they were produced by
``scripts/synthesize_counterexample.py`` and are checked here constraint by
constraint with exact predicates.
"""
from __future__ import annotations

import heapq
import json
import math
from dataclasses import dataclass, field
from importlib import resources
from typing import Callable, Iterable, Sequence

from .diffuse import DiffuseResult, LitSegment, compute_Vk, lit_segments
from .kernel import (
    Point,
    Q,
    collinear,
    format_q,
    lerp,
    line_intersection,
    on_closed_segment,
    orient_sign,
    ray_line_param,
)
from .polygon import (
    BoundaryPoint,
    SimplePolygon,
    in_closed,
    in_interior,
    locate_on_boundary,
    point_in_ring,
    validate,
)
from .regions import (
    Face,
    Region,
    holes_of,
    intersection_area,
    region_equal,
    region_union,
    segment_on_region_boundary,
)
from .visibility import ChordCache, sees_closed, weak_visibility_from_segment

VERTEX_LABELS = tuple("abcdefghijvwxy")
AUX_LABELS = ("k", "z", "y'", "c'", "f'")


class VerificationFailed(AssertionError):
    """A hole check failed; ``witness`` is a point (or None) showing why."""

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class PointOutside(ValueError):
    pass


def _pt(xy) -> Point:
    return Point(Q(xy[0]), Q(xy[1]))


@dataclass(frozen=True)
class LabeledConstruction:
    polygon: SimplePolygon
    source: Point
    vertices: dict
    aux: dict
    triangle: tuple

    def __getitem__(self, label) -> Point:
        if label == "s":
            return self.source
        if label in self.vertices:
            return self.polygon.vertices[self.vertices[label]]
        if label in self.aux:
            return self.aux[label].point(self.polygon)
        if label in ("t", "q", "r"):
            return self.triangle["tqr".index(label)]
        raise KeyError(label)

    def bp(self, label) -> BoundaryPoint:
        """Boundary address of a labelled vertex or auxiliary point."""
        if label in self.vertices:
            return BoundaryPoint(self.vertices[label], 0)
        return self.aux[label]

    def labels_json(self) -> dict:
        return {
            "s": [format_q(self.source.x), format_q(self.source.y)],
            "vertices": dict(sorted(self.vertices.items())),
            "aux": {k: [v.edge, format_q(v.t)] for k, v in sorted(self.aux.items())},
            "triangle": [[format_q(p.x), format_q(p.y)] for p in self.triangle],
        }

    def label_points(self) -> dict:
        """Every named point, for rendering."""
        names = ["s", *sorted(self.vertices), *sorted(self.aux), "t", "q", "r"]
        return {n: self[n] for n in names}

    def transformed(self, fn: Callable) -> "LabeledConstruction":
        """Image under an orientation-preserving affine map ``fn`` (boundary addresses carry over)."""
        return LabeledConstruction(
            self.polygon.transformed(fn),
            fn(self.source),
            dict(self.vertices),
            dict(self.aux),
            tuple(fn(p) for p in self.triangle),
        )

    @classmethod
    def from_json(cls, polygon, labels) -> "LabeledConstruction":
        if isinstance(polygon, str):
            polygon = json.loads(polygon)
        if isinstance(labels, str):
            labels = json.loads(labels)
        poly = SimplePolygon.from_json(polygon)
        return cls(
            poly,
            _pt(labels["s"]),
            {k: int(v) for k, v in labels["vertices"].items()},
            {k: BoundaryPoint(int(e), Q(str(t))) for k, (e, t) in labels["aux"].items()},
            tuple(_pt(p) for p in labels["triangle"]),
        )


def similarity(scale=1, translate=(0, 0), rotation=(1, 0)):
    """x -> scale * R x + translate, with R given by a rational (cos, sin) pair."""
    c, s = Q(rotation[0]), Q(rotation[1])
    if c * c + s * s != 1:
        raise ValueError("rotation must satisfy cos^2 + sin^2 = 1")
    k = Q(scale)
    if k <= 0:
        raise ValueError("scale must be positive")
    tx, ty = Q(translate[0]), Q(translate[1])

    def fn(p):
        return Point(k * (c * p[0] - s * p[1]) + tx, k * (s * p[0] + c * p[1]) + ty)

    return fn


def _data(name: str) -> str:
    return resources.files("diffvis").joinpath("data").joinpath(name).read_text()


def build_counterexample() -> LabeledConstruction:
    """The committed construction."""
    return LabeledConstruction.from_json(_data("counterexample.json"), _data("counterexample_labels.json"))


# ---------------------------------------------------------------- boundary arcs


def arc_intervals(poly: SimplePolygon, start: BoundaryPoint, end: BoundaryPoint) -> list:
    """bd(start, end) walked CCW, as (edge, lo, hi) parameter intervals."""
    n = poly.n
    s, e = start.canonical(n), end.canonical(n)
    if s.edge == e.edge and e.t >= s.t:
        return [(s.edge, s.t, e.t)]
    out = [(s.edge, s.t, Q(1))]
    i = (s.edge + 1) % n
    while i != e.edge:
        out.append((i, Q(0), Q(1)))
        i = (i + 1) % n
    out.append((e.edge, Q(0), e.t))
    return [iv for iv in out if iv[1] < iv[2] or (iv[1] == iv[2] and 0 < iv[1] < 1)]


def piece_in_arcs(piece: LitSegment, arcs: Iterable) -> bool:
    """Is the lit piece covered by the union of the given interval lists?"""
    spans = sorted((lo, hi) for arc in arcs for e, lo, hi in arc if e == piece.edge)
    reach = None
    for lo, hi in spans:
        if reach is None:
            if lo > piece.t0:
                return False
            if hi >= piece.t0:
                reach = hi
        elif lo > reach:
            break
        else:
            reach = max(reach, hi)
    return reach is not None and reach >= piece.t1


def _pieces_of(lits, arcs) -> list:
    return [p for p in lits if piece_in_arcs(p, arcs)]


# ---------------------------------------------------------------- geodesics


class _ReflexGraph:
    """Visibility graph on the reflex vertices, built once per polygon."""

    def __init__(self, poly: SimplePolygon):
        self.poly = poly
        self.nodes = [poly.vertices[i] for i in poly.reflex]
        m = len(self.nodes)
        self.adj = [[] for _ in range(m)]
        for i in range(m):
            for j in range(i + 1, m):
                if sees_closed(poly, self.nodes[i], self.nodes[j]):
                    d = _dist(self.nodes[i], self.nodes[j])
                    self.adj[i].append((j, d))
                    self.adj[j].append((i, d))


_GRAPHS: dict = {}


def _graph(poly) -> _ReflexGraph:
    g = _GRAPHS.get(poly)
    if g is None:
        if len(_GRAPHS) > 32:
            _GRAPHS.clear()
        g = _GRAPHS[poly] = _ReflexGraph(poly)
    return g


def _dist(a, b) -> float:
    return math.hypot(float(a[0] - b[0]), float(a[1] - b[1]))


def geodesic(poly: SimplePolygon, a, b) -> list:
    """Euclidean shortest path from a to b inside closed P, as a list of points.

    Dijkstra over the visibility graph of {a, b} and the reflex vertices; the
    interior path vertices are therefore reflex vertices of P.
    """
    a, b = _pt(a), _pt(b)
    for p in (a, b):
        if not in_closed(poly, p):
            raise PointOutside(f"{p!r} is not in the closed polygon")
    if sees_closed(poly, a, b):
        return [a, b]
    g = _graph(poly)
    m = len(g.nodes)
    src, dst = m, m + 1
    from_a = [(i, _dist(a, v)) for i, v in enumerate(g.nodes) if v == a or sees_closed(poly, a, v)]
    to_b = {i: _dist(v, b) for i, v in enumerate(g.nodes) if v == b or sees_closed(poly, v, b)}
    best = {src: 0.0}
    prev = {}
    heap = [(0.0, src)]
    while heap:
        d, u = heapq.heappop(heap)
        if u == dst:
            break
        if d > best.get(u, math.inf):
            continue
        if u == src:
            nbrs = from_a
        else:
            nbrs = list(g.adj[u])
            if u in to_b:
                nbrs.append((dst, to_b[u]))
        for v, w in nbrs:
            nd = d + w
            if nd < best.get(v, math.inf):
                best[v] = nd
                prev[v] = u
                heapq.heappush(heap, (nd, v))
    if dst not in prev:
        raise PointOutside("no path inside the polygon")
    path = [b]
    u = prev[dst]
    while u != src:
        path.append(g.nodes[u])
        u = prev[u]
    path.append(a)
    path.reverse()
    return [p for i, p in enumerate(path) if i == 0 or p != path[i - 1]]


def path_contains(path: Sequence, p) -> bool:
    return any(on_closed_segment(u, v, p) for u, v in zip(path, path[1:])) or p in path


# ---------------------------------------------------------------- blockers


@dataclass(frozen=True)
class SampleSpec:
    """What to sample: a single point, a polyline (e.g. a boundary arc) or a triangle."""

    kind: str
    points: tuple

    def samples(self, density: int) -> list:
        if self.kind == "point":
            return [self.points[0]]
        if self.kind == "polyline":
            out = []
            for u, v in zip(self.points, self.points[1:]):
                out.extend(lerp(u, v, Q(i) / (density + 1)) for i in range(1, density + 1))
            return out
        if self.kind == "triangle":
            a, b, c = self.points
            n = density + 2
            out = []
            for i in range(1, n):
                for j in range(1, n - i):
                    k = n - i - j
                    out.append(Point((a[0] * i + b[0] * j + c[0] * k) / n, (a[1] * i + b[1] * j + c[1] * k) / n))
            return out
        raise ValueError(f"unknown sample kind {self.kind!r}")

    @classmethod
    def point(cls, p) -> "SampleSpec":
        return cls("point", (_pt(p),))

    @classmethod
    def polyline(cls, pts) -> "SampleSpec":
        return cls("polyline", tuple(_pt(p) for p in pts))

    @classmethod
    def triangle(cls, pts) -> "SampleSpec":
        return cls("triangle", tuple(_pt(p) for p in pts))


@dataclass
class BlockerResult:
    ok: bool
    pairs: int
    witnesses: list = field(default_factory=list)

    def __bool__(self):
        return self.ok


def blocker_check(poly: SimplePolygon, p, regionR, regionS, density: int = 4) -> BlockerResult:
    """Sampled test that every geodesic from R to S passes through p."""
    if density < 1:
        raise ValueError("density must be positive")
    p = _pt(p)
    R = regionR if isinstance(regionR, SampleSpec) else SampleSpec.point(regionR)
    S = regionS if isinstance(regionS, SampleSpec) else SampleSpec.point(regionS)
    count = 0
    for r in R.samples(density):
        for s in S.samples(density):
            count += 1
            path = geodesic(poly, r, s)
            if not path_contains(path, p):
                return BlockerResult(False, count, [(r, s, path)])
    return BlockerResult(True, count)


# ---------------------------------------------------------------- constraints


def exit_point(poly: SimplePolygon, origin, through) -> Point:
    """Where the ray from ``origin`` through ``through`` first leaves closed P.

    Grazing contacts with reflex vertices or boundary edges are passed over.
    """
    o, t = _pt(origin), _pt(through)
    d = (t[0] - o[0], t[1] - o[1])
    ts = set()
    for u, v in poly.edges:
        hit = ray_line_param(o, d, u, v)
        if hit is not None:
            s, w = hit
            if s > 0 and 0 <= w <= 1:
                ts.add(s)
        else:
            for x in (u, v):
                if orient_sign(o, t, x) == 0:
                    s = (x[0] - o[0]) / d[0] if d[0] != 0 else (x[1] - o[1]) / d[1]
                    if s > 0:
                        ts.add(s)
    ts = sorted(ts)
    for i, s in enumerate(ts):
        nxt = ts[i + 1] if i + 1 < len(ts) else s + 1
        probe = lerp(o, t, (s + nxt) / 2)
        if point_in_ring(poly.vertices, probe) < 0:
            return lerp(o, t, s)
    raise PointOutside("ray never leaves the polygon")


@dataclass
class ConstraintResult:
    name: str
    ok: bool
    detail: str = ""


@dataclass
class ConstraintReport:
    results: list

    @property
    def all_pass(self) -> bool:
        return all(r.ok for r in self.results)

    def failed(self) -> list:
        return [r for r in self.results if not r.ok]

    def __getitem__(self, name) -> ConstraintResult:
        for r in self.results:
            if r.name == name:
                return r
        raise KeyError(name)

    def lines(self) -> list:
        return [f"{r.name:5s} {'pass' if r.ok else 'FAIL'}  {r.detail}" for r in self.results]


def _right_of(a, b, pts) -> bool:
    return all(orient_sign(a, b, p) < 0 for p in pts)


def _on_ray(origin, through, p) -> bool:
    return orient_sign(origin, through, p) == 0 and (
        (p[0] - origin[0]) * (through[0] - origin[0]) + (p[1] - origin[1]) * (through[1] - origin[1]) >= 0
    )


def _arc(c, p, q) -> list:
    return arc_intervals(c.polygon, c.bp(p), c.bp(q))


def _weak_region(poly, pieces, cache) -> Region:
    return region_union([weak_visibility_from_segment(poly, lit.a, lit.b, cache) for lit in pieces])


def constraint_check(c: LabeledConstruction, v0_lits=None, cache=None) -> ConstraintReport:
    """Evaluate C1-C13 exactly; the region-level items recompute visibility."""
    P = c.polygon
    cache = cache or ChordCache(P)
    L = c.__getitem__
    t, q, r = c.triangle
    out = []

    def add(name, ok, detail=""):
        out.append(ConstraintResult(name, bool(ok), detail))

    add("C1", collinear(L("s"), L("a"), L("y")) and collinear(L("s"), L("b"), L("x")) and collinear(L("s"), L("v"), L("w")),
        "s,a,y / s,b,x / s,v,w collinear")

    if v0_lits is None:
        v0_lits = lit_segments(P, compute_Vk(P, c.source, 0, cache).stages[0])
    three = [_arc(c, "x", "y"), _arc(c, "w", "b"), _arc(c, "a", "v")]
    expect = sorted((e, lo, hi) for arc in three for e, lo, hi in arc)
    got = sorted((p.edge, p.t0, p.t1) for p in v0_lits)
    add("C2", got == expect, f"{len(got)} lit pieces of V_0")

    k = L("k")
    add("C3", collinear(L("e"), L("b"), L("a"), k) and locate_on_boundary(P, k) is not None
        and exit_point(P, L("a"), L("a") + (L("a") - L("b"))) == k, "e,b,a,k collinear; k first hit beyond a")

    add("C4", collinear(k, L("d"), q, r), "k,d,q,r collinear")

    def meet(p1, p2, p3, p4):
        x = line_intersection(p1, p2, p3, p4)
        return x if _on_ray(p1, p2, x) and _on_ray(p3, p4, x) else None

    add("C5", meet(k, L("d"), L("f"), L("i")) == q and meet(k, L("d"), L("g"), L("h")) == r,
        "q = ray(k,d) x ray(f,i); r = ray(k,d) x ray(g,h)")
    add("C6", collinear(L("f"), L("i"), t, q), "f,i,t,q collinear")
    add("C7", collinear(L("g"), L("h"), t, r) and meet(L("g"), L("h"), L("f"), L("i")) == t,
        "g,h,t,r collinear; t = ray(g,h) x ray(f,i)")
    add("C8", orient_sign(L("a"), L("c"), L("i")) < 0 and orient_sign(L("v"), L("a"), L("f")) > 0,
        "i right of ray(a,c); f left of ray(v,a)")
    add("C9", orient_sign(L("y"), L("j"), L("c")) > 0, "c left of ray(y,j)")
    add("C10", collinear(L("z"), L("h"), L("x")) and _right_of(L("z"), L("c"), c.triangle),
        "z,h,x collinear; tqr right of ray(z,c)")

    fp = L("f'")
    ok11 = exit_point(P, L("x"), L("f")) == fp and on_closed_segment(L("f"), fp, L("g"))
    path = geodesic(P, fp, L("h")) if ok11 else []
    add("C11", ok11 and L("g") in path[1:-1], f"geodesic(f',h) = {len(path)}-point path through g")

    inside_if = _arc(c, "i", "f")
    on_if = lambda lab: piece_in_arcs(LitSegment(c.aux[lab].edge, c.aux[lab].t, c.aux[lab].t, L(lab), L(lab)), [inside_if])
    add("C12", collinear(L("v"), L("a"), L("y'")) and collinear(L("a"), L("c"), L("c'")) and on_if("y'") and on_if("c'")
        and exit_point(P, L("v"), L("a")) == L("y'") and exit_point(P, L("a"), L("c")) == L("c'"),
        "y' = ray(v,a) on bd(i,f); c' = ray(a,c) on bd(i,f)")

    chamber = _arc(c, "a", "b")
    outside = [p for p in v0_lits if not piece_in_arcs(p, [chamber])]
    ok_s = sorted((p.edge, p.t0, p.t1) for p in outside) == sorted(three[0])
    wb = _pieces_of(v0_lits, [three[1]])
    dk = _arc(c, "d", "k")
    stray = []
    for piece in wb:
        reg = weak_visibility_from_segment(P, piece.a, piece.b, cache)
        stray.extend(p for p in lit_segments(P, reg) if not piece_in_arcs(p, [chamber, dk]))
    add("C13", ok_s and not stray, "s sees only bd(x,y) beyond bd(a,b); bd(w,b) sees only bd(d,k) beyond it"
        + (f"; stray {stray[0].a!r}" if stray else ""))

    # g' read as d, the vertex after h on the side away from g
    add("g'", _right_of(L("d"), L("h"), c.triangle), "tqr right of ray(g',h) with g' = d")
    return ConstraintReport(out)


# ---------------------------------------------------------------- hole verification


@dataclass
class HoleCertificate:
    construction: LabeledConstruction
    hole: Face
    stages: list
    constraints: ConstraintReport
    arc_shadows: dict
    blockers: dict = field(default_factory=dict)

    def summary(self) -> list:
        t, q, r = self.construction.triangle
        lines = ["HOLE VERIFIED: 1 hole (triangle tqr)"]
        lines.append("  t=(%s, %s) q=(%s, %s) r=(%s, %s)" % tuple(format_q(v) for p in (t, q, r) for v in p))
        for name, ok in self.arc_shadows.items():
            lines.append(f"  shadow: weak({name}) misses tqr: {'yes' if ok else 'NO'}")
        for name, res in self.blockers.items():
            lines.append(f"  blocker {name}: {'yes' if res else 'NO'} ({res.pairs} sampled pairs)")
        lines.extend("  " + ln for ln in self.constraints.lines())
        return lines

    def revalidate(self) -> bool:
        again = verify_theorem(self.construction)
        return again.hole == self.hole and all(region_equal(a, b) for a, b in zip(again.stages, self.stages))


def _triangle_region(tri) -> Region:
    t, q, r = tri
    if orient_sign(t, q, r) < 0:
        q, r = r, q
    return Region((Face((t, q, r)),))


def _ring_corners(ring) -> set:
    n = len(ring)
    return {ring[i] for i in range(n) if orient_sign(ring[i - 1], ring[i], ring[(i + 1) % n]) != 0}


def triangle_inside(poly: SimplePolygon, tri) -> bool:
    """Closed triangle contained in int(P)."""
    if not all(in_interior(poly, p) for p in tri):
        return False
    from .kernel import intersect_segments

    edges = list(zip(tri, tri[1:] + tri[:1]))
    for u, v in poly.edges:
        for a, b in edges:
            if intersect_segments((u, v), (a, b)):
                return False
    return True


def arc_shadows(c: LabeledConstruction, res: DiffuseResult, cache=None) -> dict:
    """For each lit arc of V_0, does its weak-visibility region miss the open triangle?"""
    P = c.polygon
    cache = cache or ChordCache(P)
    tri = _triangle_region(c.triangle)
    out = {}
    for name, (p, q) in {"bd(x,y)": ("x", "y"), "bd(w,b)": ("w", "b"), "bd(a,v)": ("a", "v")}.items():
        pieces = _pieces_of(res.lits[0], [_arc(c, p, q)])
        reg = _weak_region(P, pieces, cache)
        out[name] = bool(pieces) and intersection_area(reg, tri) == 0
    return out


def v1_decomposition(c: LabeledConstruction, res: DiffuseResult, cache=None) -> bool:
    """V_1 equals V_0 plus the weak regions of the three arcs."""
    P = c.polygon
    cache = cache or ChordCache(P)
    parts = [res.stages[0]]
    for p, q in (("x", "y"), ("w", "b"), ("a", "v")):
        parts.append(_weak_region(P, _pieces_of(res.lits[0], [_arc(c, p, q)]), cache))
    return region_equal(region_union(parts), res.stages[1])


def v1_portions(c: LabeledConstruction, res: DiffuseResult) -> list:
    """Lit pieces of V_1 outside the six arcs bd(a,b), bd(i,f), bd(b,c), bd(h,a), bd(i,h)."""
    arcs = [_arc(c, *pq) for pq in (("a", "b"), ("i", "f"), ("b", "c"), ("h", "a"), ("i", "h"))]
    return [p for p in lit_segments(c.polygon, res.stages[1]) if not piece_in_arcs(p, arcs)]


def verify_theorem(c: LabeledConstruction, check_constraints: bool = True, blockers: bool = False) -> HoleCertificate:
    """Compute V_0..V_2, check the arc shadows and the hole tqr; raise VerificationFailed otherwise.

    The hole checks: closed tqr inside int(P), tqr dark in V_2(s), and its three
    edges on bd(V_2(s)).
    """
    P = c.polygon
    if not validate(P).valid:
        raise VerificationFailed("polygon is not a valid simple CCW polygon")
    cache = ChordCache(P)
    res = compute_Vk(P, c.source, 2, cache)
    t, q, r = c.triangle
    centroid = Point((t.x + q.x + r.x) / 3, (t.y + q.y + r.y) / 3)
    if check_constraints:
        report = constraint_check(c, res.lits[0], cache)
        if not report.all_pass:
            bad = report.failed()[0]
            raise VerificationFailed(f"constraint {bad.name} fails: {bad.detail}")
    else:
        report = ConstraintReport([])
    if not triangle_inside(P, c.triangle):
        raise VerificationFailed("triangle tqr is not contained in int(P)", centroid)
    l1 = arc_shadows(c, res, cache) if check_constraints else {}
    for name, ok in l1.items():
        if not ok:
            raise VerificationFailed(f"weak visibility of {name} meets tqr", centroid)
    v2 = res.stages[2]
    tri = _triangle_region(c.triangle)
    if intersection_area(v2, tri) != 0 or v2.contains(centroid) >= 0:
        raise VerificationFailed("part of triangle tqr is 2-visible", centroid)
    for a, b, name in ((t, q, "tq"), (q, r, "qr"), (r, t, "rt")):
        if not segment_on_region_boundary(v2, a, b):
            raise VerificationFailed(f"edge {name} is not on bd(V_2(s))", Point((a.x + b.x) / 2, (a.y + b.y) / 2))
    holes = holes_of(P, v2)
    if len(holes) != 1:
        raise VerificationFailed(f"expected exactly one hole in V_2(s), found {len(holes)}",
                                 holes[1].sample() if len(holes) > 1 else centroid)
    hole = holes[0]
    if hole.holes or _ring_corners(hole.outer) != {t, q, r}:
        raise VerificationFailed("the hole of V_2(s) is not the triangle tqr", hole.sample())
    if holes_of(P, res.stages[1]):
        raise VerificationFailed("V_1(s) already has a hole", holes_of(P, res.stages[1])[0].sample())
    cert = HoleCertificate(c, hole, list(res.stages), report, l1)
    if blockers:
        cert.blockers = construction_blockers(c)
    return cert


def construction_blockers(c: LabeledConstruction, density: int = 3) -> dict:
    """The two blocker claims of the construction, checked on samples."""
    P = c.polygon
    tri = SampleSpec.triangle(c.triangle)
    return {
        "b blocks s from tqr": blocker_check(P, c["b"], SampleSpec.point(c.source), tri, density),
        "j blocks bd(x,y) from tqr": blocker_check(P, c["j"], SampleSpec.polyline([c["x"], c["y"]]), tri, density),
    }
