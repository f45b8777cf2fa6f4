"""Random simple polygons and hole census over V_k(s)."""
from __future__ import annotations

import csv
import io
import itertools
import time
from dataclasses import dataclass, field

import numpy as np

from .kernel import Point, Q, format_q, orient_sign
from .polygon import SimplePolygon, in_interior, validate


class GenerationFailed(RuntimeError):
    pass


def _segments_cross(a, b, c, d) -> bool:
    o1, o2 = orient_sign(a, b, c), orient_sign(a, b, d)
    o3, o4 = orient_sign(c, d, a), orient_sign(c, d, b)
    return o1 * o2 < 0 and o3 * o4 < 0


def _untangle(pts: list, budget: int) -> list:
    """2-opt: reverse the chain between two crossing edges until none cross."""
    n = len(pts)
    for _ in range(budget):
        found = False
        for i in range(n):
            a, b = pts[i], pts[(i + 1) % n]
            for j in range(i + 2, n):
                if i == 0 and j == n - 1:
                    continue
                c, d = pts[j], pts[(j + 1) % n]
                if _segments_cross(a, b, c, d):
                    pts[i + 1 : j + 1] = pts[i + 1 : j + 1][::-1]
                    found = True
                    break
            if found:
                break
        if not found:
            return pts
    raise GenerationFailed("2-opt did not converge")


def random_simple_polygon(n: int, seed: int, size: int = 1000, retries: int = 20) -> SimplePolygon:
    """Deterministic random simple polygon with integer vertices in [0, size) and no three collinear."""
    if n < 3:
        raise ValueError("n must be at least 3")
    rng = np.random.default_rng(seed)
    for _ in range(retries):
        pts = []
        attempts = 0
        while len(pts) < n:
            attempts += 1
            if attempts > 200 * n:
                break
            x, y = (int(v) for v in rng.integers(0, size, 2))
            p = Point(Q(x), Q(y))
            if p in pts:
                continue
            if any(orient_sign(a, b, p) == 0 for a, b in itertools.combinations(pts, 2)):
                continue
            pts.append(p)
        if len(pts) < n:
            continue
        order = [int(i) for i in rng.permutation(n)]
        pts = [pts[i] for i in order]
        try:
            pts = _untangle(pts, budget=50 * n * n)
        except GenerationFailed:
            continue
        poly = SimplePolygon(pts)
        if poly.signed_area < 0:
            poly = SimplePolygon(pts[::-1])
        if validate(poly).valid:
            return poly
    raise GenerationFailed(f"no simple polygon after {retries} attempts (n={n}, seed={seed})")


def random_convex_polygon(n: int, seed: int, size: int = 1000) -> SimplePolygon:
    """Convex polygon: the convex hull of random integer points, retried until it has n vertices."""
    rng = np.random.default_rng(seed)
    while True:
        pts = {(int(x), int(y)) for x, y in rng.integers(0, size, (4 * n, 2))}
        hull = _convex_hull([Point(Q(x), Q(y)) for x, y in pts])
        if len(hull) >= n:
            idx = sorted(int(i) for i in rng.choice(len(hull), n, replace=False))
            return SimplePolygon([hull[i] for i in idx])


def _convex_hull(pts):
    pts = sorted(set(pts))
    if len(pts) < 3:
        return pts

    def half(seq):
        out = []
        for p in seq:
            while len(out) >= 2 and orient_sign(out[-2], out[-1], p) <= 0:
                out.pop()
            out.append(p)
        return out

    lower, upper = half(pts), half(reversed(pts))
    return lower[:-1] + upper[:-1]


def source_for(poly: SimplePolygon, seed: int) -> Point:
    """Vertex centroid if interior, else a rejection-sampled interior point."""
    n = poly.n
    c = Point(sum((v.x for v in poly.vertices), Q(0)) / n, sum((v.y for v in poly.vertices), Q(0)) / n)
    if in_interior(poly, c) and not _on_vertex_line(poly, c):
        return c
    rng = np.random.default_rng(seed ^ 0x5EED)
    x0, y0, x1, y1 = poly.bbox
    for _ in range(10000):
        fx, fy = (Q(int(v)) / (1 << 16) for v in rng.integers(0, 1 << 16, 2))
        p = Point(x0 + (x1 - x0) * fx, y0 + (y1 - y0) * fy)
        if in_interior(poly, p) and not _on_vertex_line(poly, p):
            return p
    raise GenerationFailed("could not place an interior source")


def _on_vertex_line(poly, p) -> bool:
    """Keep random sources off lines through two vertices (sightlines grazing two corners)."""
    vs = poly.vertices
    return any(orient_sign(a, b, p) == 0 for a, b in itertools.combinations(vs, 2))


@dataclass
class CensusRecord:
    seed: int
    n: int
    source: Point
    holes: list = field(default_factory=list)  # per k
    hole_areas: list = field(default_factory=list)
    millis: list = field(default_factory=list)
    error: str | None = None

    def rows(self):
        for k, (h, a, ms) in enumerate(zip(self.holes, self.hole_areas, self.millis)):
            yield [self.seed, self.n, k, h, format_q(a), ms]


def hole_census(instances, kmax: int, allow_k1_holes: bool = False, timing: bool = True):
    """Yield a CensusRecord per (seed, polygon, source) instance."""
    from .diffuse import compute_Vk
    from .regions import holes_of

    for seed, poly, s in instances:
        rec = CensusRecord(seed, poly.n, s)
        try:
            t0 = time.perf_counter()
            res = compute_Vk(poly, s, 0)
            for k in range(kmax + 1):
                if k > 0:
                    res = _extend(res, poly)
                hs = holes_of(poly, res.stages[k])
                t1 = time.perf_counter()
                rec.holes.append(len(hs))
                rec.hole_areas.append(sum((h.area for h in hs), Q(0)))
                rec.millis.append(int((t1 - t0) * 1000) if timing else 0)
                t0 = t1
                if k == 1 and hs and not allow_k1_holes:
                    raise AssertionError(f"V_1 has {len(hs)} hole(s): contradicts simple connectivity of V_1")
        except Exception as exc:  # recorded, census continues
            rec.error = f"{type(exc).__name__}: {exc}"
        yield rec


def _extend(res, poly):
    from .diffuse import _stage_region, lit_segments
    from .visibility import ChordCache

    cache = getattr(res, "_cache", None) or ChordCache(poly)
    res._cache = cache
    lits = lit_segments(poly, res.stages[-1])
    res.lits.append(lits)
    res.stages.append(_stage_region(poly, res.stages[-1], lits, cache))
    return res


def random_instances(n: int, count: int, seed: int):
    """``count`` instances with seeds seed, seed+1, ...; n is fixed."""
    for i in range(count):
        sd = seed + i
        poly = random_simple_polygon(n, sd)
        yield sd, poly, source_for(poly, sd)


def census_csv(records, timing: bool = True) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["seed", "n", "k", "holes", "total_hole_area", "millis"])
    for rec in records:
        for row in rec.rows():
            if not timing:
                row[-1] = 0
            w.writerow(row)
    return buf.getvalue()
