"""Brute-force diffuse visibility on a discretisation of the polygon.

Edge interiors are sampled at rational parameters j/(m+1) and the interior at an
axis-aligned rational grid. Everything is scaled to a common denominator so the
sight tests run on integer numpy arrays with no rounding.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from math import lcm

import numpy as np

from .kernel import Point, Q, format_q
from .polygon import SimplePolygon, point_in_ring

_INT_LIMIT = 2**29


@dataclass
class SampleSet:
    points: list  # exact Points
    edge: list  # edge index, or -1 for interior grid samples
    m: int
    delta: object
    scale: int  # common denominator
    coords: np.ndarray  # integer coordinates (points * scale)

    @property
    def n_edge_samples(self) -> int:
        return sum(1 for e in self.edge if e >= 0)

    @property
    def n_grid_samples(self) -> int:
        return sum(1 for e in self.edge if e < 0)


def default_delta(poly: SimplePolygon, divisions: int = 64):
    x0, y0, x1, y1 = poly.bbox
    return max(x1 - x0, y1 - y0) / divisions


def make_samples(poly: SimplePolygon, m: int = 64, delta=None) -> SampleSet:
    delta = Q(delta) if delta is not None else default_delta(poly)
    pts, edge = [], []
    for i, (u, v) in enumerate(poly.edges):
        for j in range(1, m + 1):
            t = Q(j) / (m + 1)
            pts.append(Point(u[0] + (v[0] - u[0]) * t, u[1] + (v[1] - u[1]) * t))
            edge.append(i)
    x0, y0, x1, y1 = poly.bbox
    nx = int((x1 - x0) / delta)
    ny = int((y1 - y0) / delta)
    for ix in range(nx + 1):
        x = x0 + ix * delta
        for iy in range(ny + 1):
            p = Point(x, y0 + iy * delta)
            if point_in_ring(poly.vertices, p) > 0:
                pts.append(p)
                edge.append(-1)
    scale = 1
    for p in list(pts) + list(poly.vertices):
        scale = lcm(scale, int(p[0].denominator), int(p[1].denominator))
    big = max(abs(int(c * scale)) for p in list(pts) + list(poly.vertices) for c in p)
    dtype = np.int64 if 2 * big < _INT_LIMIT else object
    coords = np.array([[int(p[0] * scale), int(p[1] * scale)] for p in pts], dtype=dtype).reshape(-1, 2)
    return SampleSet(pts, edge, m, delta, scale, coords)


def _sign(a):
    return (a > 0).astype(np.int8) - (a < 0).astype(np.int8)


class _Sight:
    """Vectorised exact sight tests against one polygon at a fixed scale."""

    def __init__(self, poly: SimplePolygon, scale: int, dtype):
        vs = [(int(v[0] * scale), int(v[1] * scale)) for v in poly.vertices]
        self.u = np.array(vs, dtype=dtype)
        self.v = np.roll(self.u, -1, axis=0)
        self.u2 = self.u * 2
        self.v2 = self.v * 2
        self.dtype = dtype

    def sees_many(self, p, targets: np.ndarray) -> np.ndarray:
        """Mask of targets t with the open segment p-t inside int(P)."""
        px, py = p
        tx = targets[:, 0][None, :]
        ty = targets[:, 1][None, :]
        ux, uy = self.u[:, 0][:, None], self.u[:, 1][:, None]
        vx, vy = self.v[:, 0][:, None], self.v[:, 1][:, None]
        dx, dy = tx - px, ty - py
        o1 = _sign(dx * (uy - py) - dy * (ux - px))
        o2 = _sign(dx * (vy - py) - dy * (vx - px))
        o3 = _sign((vx - ux) * (py - uy) - (vy - uy) * (px - ux))
        o4 = _sign((vx - ux) * (ty - uy) - (vy - uy) * (tx - ux))
        col = (o1 == 0) & (o2 == 0)
        crossing = (o1 * o2 <= 0) & (o3 * o4 < 0) & ~col
        tu = (ux - px) * dx + (uy - py) * dy
        tv = (vx - px) * dx + (vy - py) * dy
        ll = dx * dx + dy * dy
        overlap = col & (np.maximum(tu, tv) > 0) & (np.minimum(tu, tv) < ll)
        clear = ~(crossing | overlap).any(axis=0)
        same = (dx[0] == 0) & (dy[0] == 0)
        clear &= ~same
        idx = np.nonzero(clear)[0]
        if idx.size:
            mx = (targets[idx, 0] + px)[None, :]
            my = (targets[idx, 1] + py)[None, :]
            ax, ay = self.u2[:, 0][:, None], self.u2[:, 1][:, None]
            bx, by = self.v2[:, 0][:, None], self.v2[:, 1][:, None]
            straddle = (ay > my) != (by > my)
            o = _sign((bx - ax) * (my - ay) - (by - ay) * (mx - ax))
            hits = straddle & ((o > 0) == (by > ay))
            inside = (hits.sum(axis=0) % 2) == 1
            clear[idx] = inside
        return clear


def oracle_reachable(poly: SimplePolygon, s, k: int, m: int = 64, delta=None, samples: SampleSet | None = None) -> dict:
    """Map sample index -> minimal reflection depth, for samples reachable within k reflections."""
    samples = samples or make_samples(poly, m, delta)
    s = Point(Q(s[0]), Q(s[1]))
    # depth 0 may need a finer scale to place s on the integer grid; the
    # reflection rounds only involve samples and stay at the base scale
    first = samples
    if (s[0] * samples.scale).denominator != 1 or (s[1] * samples.scale).denominator != 1:
        first = _rescale(samples, poly, lcm(int(s[0].denominator), int(s[1].denominator)))
    sp = (int(s[0] * first.scale), int(s[1] * first.scale))
    fc = first.coords
    mask = _Sight(poly, first.scale, fc.dtype).sees_many(sp, fc)
    # a sample sitting on the source itself is lit (s is interior)
    mask |= (fc[:, 0] == sp[0]) & (fc[:, 1] == sp[1])
    sight = _Sight(poly, samples.scale, samples.coords.dtype)
    coords = samples.coords
    depth = {}
    frontier = []
    for i in np.nonzero(mask)[0]:
        depth[int(i)] = 0
        if samples.edge[i] >= 0:
            frontier.append(int(i))
    unreached = np.array([i for i in range(len(samples.points)) if i not in depth], dtype=np.int64)
    for d in range(1, k + 1):
        new_frontier = []
        for i in frontier:
            if unreached.size == 0:
                break
            p = coords[i]
            hit = sight.sees_many((p[0], p[1]), coords[unreached])
            if hit.any():
                for j in unreached[hit]:
                    depth[int(j)] = d
                    if samples.edge[j] >= 0:
                        new_frontier.append(int(j))
                unreached = unreached[~hit]
        frontier = new_frontier
    return depth


def _rescale(samples: SampleSet, poly, factor: int) -> SampleSet:
    scale = samples.scale * factor
    big = max(abs(int(c * scale)) for p in list(samples.points) + list(poly.vertices) for c in p)
    dtype = np.int64 if 2 * big < _INT_LIMIT else object
    coords = np.array([[int(p[0] * scale), int(p[1] * scale)] for p in samples.points], dtype=dtype).reshape(-1, 2)
    return SampleSet(samples.points, samples.edge, samples.m, samples.delta, scale, coords)


@dataclass
class DiscrepancyReport:
    k: int
    n_samples: int
    n_reached: int
    soundness: list = field(default_factory=list)  # (index, point, depth)
    incompleteness: list = field(default_factory=list)  # (index, point)

    @property
    def sound(self) -> bool:
        return not self.soundness

    def to_json(self, limit: int = 100) -> dict:
        def pt(p):
            return [format_q(p[0]), format_q(p[1])]

        return {
            "k": self.k,
            "samples": self.n_samples,
            "reached": self.n_reached,
            "soundness_violations": len(self.soundness),
            "incomplete_samples": len(self.incompleteness),
            "soundness_witnesses": [{"point": pt(p), "depth": d} for _, p, d in self.soundness[:limit]],
            "incomplete_witnesses": [{"point": pt(p)} for _, p in self.incompleteness[:limit]],
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2)


def compare_with_analytic(poly: SimplePolygon, s, k: int, m: int = 64, delta=None, analytic=None) -> DiscrepancyReport:
    """Soundness (oracle within analytic V_k) is strict; completeness is advisory."""
    from .diffuse import compute_Vk

    if analytic is None:
        analytic = compute_Vk(poly, s, k)
    samples = make_samples(poly, m, delta)
    reached = oracle_reachable(poly, s, k, samples=samples)
    report = DiscrepancyReport(k, len(samples.points), len(reached))
    for i, d in sorted(reached.items()):
        stage = analytic.stages[min(d, analytic.k)] if d <= k else None
        p = samples.points[i]
        if analytic.stages[k].contains(p) < 0:
            report.soundness.append((i, p, d))
        elif stage is not None and stage.contains(p) < 0:
            report.soundness.append((i, p, d))
    for i, p in enumerate(samples.points):
        if samples.edge[i] < 0 and i not in reached and analytic.stages[k].contains(p) > 0:
            report.incompleteness.append((i, p))
    return report
