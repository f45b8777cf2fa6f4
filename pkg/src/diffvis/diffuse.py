"""Diffuse reflection stages V_0(s), V_1(s), ... and reflection-path witnesses."""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field

from .arrangement import UNBOUNDED, Arrangement
from .kernel import Point, Q, lerp, on_closed_segment, orient_sign, param_on
from .polygon import SimplePolygon, in_interior
from .regions import Region, region_from_labels
from .visibility import (
    ChordCache,
    SourceOutside,
    sees,
    visibility_from_point,
    visible_intervals,
    weak_visibility_from_segment,
)

MAX_K = 8


@dataclass(frozen=True)
class LitSegment:
    """Closed piece [t0, t1] of edge ``edge``; reflection happens on its open edge-interior part."""

    edge: int
    t0: object
    t1: object
    a: Point
    b: Point

    @property
    def is_point(self) -> bool:
        return self.a == self.b


class LitSet(tuple):
    """Lit segments of all edges, sorted by (edge, t0)."""

    def on_edge(self, i):
        return [s for s in self if s.edge == i]


def lit_segments(poly: SimplePolygon, region) -> LitSet:
    """Maximal pieces of each open edge contained in the closed region."""
    if hasattr(region, "region"):
        region = region.region
    out = []
    bsegs = list(region.boundary_segments())
    for i, (u, v) in enumerate(poly.edges):
        spans = []
        points = []
        for p, q in bsegs:
            on_p = on_closed_segment(u, v, p)
            on_q = on_closed_segment(u, v, q)
            if on_p and on_q:
                tp, tq = param_on(u, v, p), param_on(u, v, q)
                spans.append((min(tp, tq), max(tp, tq)))
            elif on_p:
                points.append(param_on(u, v, p))
            elif on_q:
                points.append(param_on(u, v, q))
        spans.sort()
        merged = []
        for lo, hi in spans:
            if merged and lo <= merged[-1][1]:
                if hi > merged[-1][1]:
                    merged[-1][1] = hi
            else:
                merged.append([lo, hi])
        for t in sorted(set(points)):
            if 0 < t < 1 and not any(lo <= t <= hi for lo, hi in merged):
                merged.append([t, t])
        merged.sort()
        for lo, hi in merged:
            if lo == hi and (lo == 0 or lo == 1):
                continue
            out.append(LitSegment(i, lo, hi, lerp(u, v, lo), lerp(u, v, hi)))
    return LitSet(out)


def _stage_region(poly, prev: Region, lits, cache: ChordCache, check: bool = False) -> Region:
    """V_{i+1} = V_i union the weak visibility regions of every lit piece of V_i."""
    segs = [(u, v, "P") for u, v in poly.edges]
    segs.extend((p, q, "B") for p, q in prev.boundary_segments())
    for j, lit in enumerate(lits):
        for p, q in cache.segment_chords(lit.a, lit.b):
            segs.append((p, q, j))
    arr = Arrangement(segs)
    nf = arr.n_faces
    if nf == 0:
        return Region()

    def test(y, j):
        lit = lits[j]
        return bool(visible_intervals(poly, y, lit.a, lit.b))

    samples = {}

    def sample(f):
        if f not in samples:
            samples[f] = arr.face_sample(f)
        return samples[f]

    in_prev = [False] * nf
    seen = [None] * nf
    adj = arr.adjacency()
    for start in range(nf):
        if seen[start] is not None:
            continue
        y = sample(start)
        in_prev[start] = prev.contains(y) > 0
        seen[start] = frozenset(j for j in range(len(lits)) if test(y, j))
        queue = deque([start])
        while queue:
            f = queue.popleft()
            for g, e in adj[f]:
                if g == UNBOUNDED or seen[g] is not None:
                    continue
                tags = arr.edge_tags[e]
                flip_b = tags.count("B") % 2 == 1
                in_prev[g] = in_prev[f] ^ flip_b
                changed = {t for t in tags if isinstance(t, int)}
                if changed:
                    y = sample(g)
                    s = set(seen[f])
                    for j in changed:
                        if test(y, j):
                            s.add(j)
                        else:
                            s.discard(j)
                    seen[g] = frozenset(s)
                else:
                    seen[g] = seen[f]
                queue.append(g)
    if check:
        for f in range(nf):
            y = sample(f)
            direct = frozenset(j for j in range(len(lits)) if test(y, j))
            if direct != seen[f] or in_prev[f] != (prev.contains(y) > 0):
                raise AssertionError(f"label propagation mismatch at face {f} sample {y!r}")
    label = [in_prev[f] or bool(seen[f]) for f in range(nf)]
    return region_from_labels(arr, label, keep=frozenset(poly.vertices))


@dataclass
class DiffuseResult:
    poly: SimplePolygon
    source: Point
    stages: list = field(default_factory=list)
    lits: list = field(default_factory=list)

    @property
    def region(self) -> Region:
        return self.stages[-1]

    @property
    def k(self) -> int:
        return len(self.stages) - 1

    def to_json(self, with_stages=False) -> dict:
        out = self.region.to_json()
        if with_stages:
            out["stages"] = [r.to_json() for r in self.stages]
        return out


def compute_Vk(poly: SimplePolygon, s, k: int, cache: ChordCache | None = None, max_k: int = MAX_K) -> DiffuseResult:
    """V_0(s), ..., V_k(s); at most k diffuse reflections."""
    s = Point(Q(s[0]), Q(s[1]))
    if k < 0:
        raise ValueError("k must be non-negative")
    if k > max_k:
        raise ValueError(f"k={k} exceeds the configured limit {max_k}")
    if not in_interior(poly, s):
        raise SourceOutside(f"source {s!r} is not interior to the polygon")
    cache = cache or ChordCache(poly)
    v0 = visibility_from_point(poly, s, cache).region
    res = DiffuseResult(poly, s, [v0], [])
    for _ in range(k):
        prev = res.stages[-1]
        lits = lit_segments(poly, prev)
        res.lits.append(lits)
        if _covers_all_edges(poly, lits):
            res.stages.append(Region.from_polygon(poly))
            continue
        res.stages.append(_stage_region(poly, prev, lits, cache))
    return res


def _covers_all_edges(poly, lits) -> bool:
    full = {lit.edge for lit in lits if lit.t0 == 0 and lit.t1 == 1}
    return len(full) == poly.n


def weak_regions_of(poly, lits, cache=None) -> list:
    """Weak visibility region of each lit piece separately (used for cross-checks)."""
    cache = cache or ChordCache(poly)
    return [weak_visibility_from_segment(poly, lit.a, lit.b, cache) for lit in lits]


def k_visible_witness(poly: SimplePolygon, s, y, k: int, result: DiffuseResult | None = None):
    """A reflection path s, p_1, ..., y with at most k reflections, or None."""
    s = Point(Q(s[0]), Q(s[1]))
    y = Point(Q(y[0]), Q(y[1]))
    if result is None or result.k < k:
        result = compute_Vk(poly, s, k)

    def trace(target, level):
        if target != s and sees(poly, s, target):
            return [s, target]
        if level == 0:
            return None
        for lit in result.lits[level - 1]:
            for lo, hi in visible_intervals(poly, target, lit.a, lit.b):
                p = lerp(lit.a, lit.b, (lo + hi) / 2)
                if p == target:
                    continue
                sub = trace(p, level - 1)
                if sub is not None:
                    return sub + [target]
        return None

    for level in range(k + 1):
        if result.stages[level].contains(y) >= 0:
            path = trace(y, level)
            if path is not None:
                return path
    return None


def validate_trace(poly: SimplePolygon, path) -> bool:
    from .polygon import locate_on_boundary

    for p in path[1:-1]:
        bp = locate_on_boundary(poly, p)
        if bp is None or bp.at_vertex:
            return False
    return all(sees(poly, a, b) for a, b in zip(path, path[1:]))
