"""Regions with holes: union, complement within a polygon, and hole extraction."""
from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass, field

from .arrangement import UNBOUNDED, Arrangement, interior_point, ring_area2, simplify_ring
from .kernel import Point, Q, format_q, orient_sign
from .polygon import SimplePolygon, point_in_ring


@dataclass(frozen=True)
class Face:
    """Outer ring (CCW) plus hole rings (CW)."""

    outer: tuple
    holes: tuple = ()

    @property
    def area(self):
        a = ring_area2(self.outer)
        for h in self.holes:
            a += ring_area2(h)
        return a / 2

    def rings(self):
        return [self.outer, *self.holes]

    def contains(self, p) -> int:
        """+1 interior, 0 boundary, -1 exterior."""
        s = point_in_ring(self.outer, p)
        if s <= 0:
            return s
        for h in self.holes:
            t = point_in_ring(h, p)
            if t >= 0:
                return -t
        return 1

    def sample(self) -> Point:
        return interior_point(self.rings())

    def to_json(self):
        return {
            "outer": [[format_q(x), format_q(y)] for x, y in self.outer],
            "holes": [[[format_q(x), format_q(y)] for x, y in h] for h in self.holes],
        }

    @classmethod
    def from_json(cls, data) -> "Face":
        outer = tuple(Point(Q(str(x)), Q(str(y))) for x, y in data["outer"])
        holes = tuple(tuple(Point(Q(str(x)), Q(str(y))) for x, y in h) for h in data.get("holes", []))
        return cls(outer, holes)


@dataclass(frozen=True)
class Region:
    faces: tuple = field(default_factory=tuple)

    @classmethod
    def from_polygon(cls, poly) -> "Region":
        verts = poly.vertices if isinstance(poly, SimplePolygon) else tuple(poly)
        return cls((Face(tuple(verts)),))

    @property
    def area(self):
        return sum((f.area for f in self.faces), Q(0))

    @property
    def n_holes(self) -> int:
        return sum(len(f.holes) for f in self.faces)

    def is_empty(self) -> bool:
        return not self.faces

    def contains(self, p) -> int:
        """+1 interior, 0 boundary, -1 exterior (closed-set membership is ``>= 0``)."""
        best = -1
        for f in self.faces:
            best = max(best, f.contains(p))
            if best > 0:
                return best
        return best

    def __contains__(self, p) -> bool:
        return self.contains(p) >= 0

    def boundary_segments(self):
        for f in self.faces:
            for ring in f.rings():
                n = len(ring)
                for i in range(n):
                    yield ring[i], ring[(i + 1) % n]

    def to_json(self) -> dict:
        return {"faces": [f.to_json() for f in self.faces]}

    def dumps(self) -> str:
        return json.dumps(self.to_json())

    @classmethod
    def from_json(cls, data) -> "Region":
        if isinstance(data, str):
            data = json.loads(data)
        return cls(tuple(Face.from_json(f) for f in data["faces"]))


def as_region(part) -> Region:
    if isinstance(part, Region):
        return part
    if hasattr(part, "region"):
        return part.region
    return Region.from_polygon(part)


def region_from_labels(arr: Arrangement, label, keep=frozenset()) -> Region:
    """Assemble the closed union of the True-labelled faces of ``arr`` as a Region."""
    comps = arr.components(label)
    comp_id = {}
    for ci, comp in enumerate(comps):
        for f in comp:
            comp_id[f] = ci
    outers = [[] for _ in comps]
    holes = [[] for _ in comps]
    for hs in arr.trace_boundary(label):
        ring = [arr.vertices[arr.origin[h]] for h in hs]
        ci = comp_id[arr.face_of[hs[0]]]
        ring = simplify_ring(ring, keep)
        if ring_area2(ring) > 0:
            outers[ci].append(ring)
        else:
            holes[ci].append(ring)
    faces = []
    for ci in range(len(comps)):
        if not outers[ci]:
            continue
        outer = max(outers[ci], key=ring_area2)
        faces.append(Face(_canonical_ring(outer), tuple(_canonical_ring(h) for h in sorted(holes[ci], key=_ring_key))))
    faces.sort(key=lambda f: _ring_key(f.outer))
    return Region(tuple(faces))


def _canonical_ring(ring) -> tuple:
    """Rotate a ring to start at its lexicographically smallest vertex."""
    i = min(range(len(ring)), key=lambda k: ring[k])
    return tuple(ring[i:] + ring[:i])


def _ring_key(ring):
    return min(ring)


def _parity_tags(tags):
    odd = set()
    for t in tags:
        odd ^= {t}
    return odd


def _propagate_membership(arr: Arrangement, n_parts: int):
    """Per-face membership tuple, by toggling membership across tagged edges."""
    members = {UNBOUNDED: frozenset()}
    adj = arr.adjacency()
    queue = deque([UNBOUNDED])
    while queue:
        f = queue.popleft()
        for g, e in adj[f]:
            if g in members:
                continue
            members[g] = members[f] ^ _parity_tags(arr.edge_tags[e])
            queue.append(g)
    return members


def _ring_segments(region: Region, tag):
    for a, b in region.boundary_segments():
        yield a, b, tag


def region_union(parts) -> Region:
    """Exact union of regions / visibility polygons / polygons."""
    regions = [as_region(p) for p in parts]
    regions = [r for r in regions if not r.is_empty()]
    if not regions:
        return Region()
    if len(regions) == 1:
        arr = Arrangement(_ring_segments(regions[0], 0))
    else:
        arr = Arrangement(seg for i, r in enumerate(regions) for seg in _ring_segments(r, i))
    members = _propagate_membership(arr, len(regions))
    label = [bool(members[f]) for f in range(arr.n_faces)]
    return region_from_labels(arr, label)


def _complement_arrangement(poly: SimplePolygon, region: Region):
    segs = [(a, b, "P") for a, b in poly.edges]
    segs.extend(_ring_segments(region, "R"))
    arr = Arrangement(segs)
    members = _propagate_membership(arr, 2)
    label = [("P" in members[f]) and ("R" not in members[f]) for f in range(arr.n_faces)]
    return arr, label


def complement_in(poly: SimplePolygon, region) -> Region:
    """Closure of P minus ``region``."""
    arr, label = _complement_arrangement(poly, as_region(region))
    return region_from_labels(arr, label)


def holes_of(poly: SimplePolygon, region) -> list:
    """Components of closure(P minus region) whose closure avoids bd(P), as Faces."""
    arr, label = _complement_arrangement(poly, as_region(region))
    on_boundary = set()
    for e, tags in enumerate(arr.edge_tags):
        if "P" in tags:
            on_boundary.add(arr.origin[2 * e])
            on_boundary.add(arr.origin[2 * e + 1])
    holes = []
    for comp in arr.components(label, through_vertices=True):
        touches = False
        for f in comp:
            for h in arr.face_halfedges(f):
                if arr.origin[h] in on_boundary:
                    touches = True
                    break
            if touches:
                break
        if touches:
            continue
        sub = [False] * arr.n_faces
        for f in comp:
            sub[f] = True
        holes.extend(region_from_labels(arr, sub).faces)
    holes.sort(key=lambda f: _ring_key(f.outer))
    return holes


def region_contains_region(outer: Region, inner: Region) -> bool:
    """Face-level containment test: every face of ``inner`` lies within closed ``outer``."""
    if inner.is_empty():
        return True
    arr = Arrangement([*_ring_segments(outer, "O"), *_ring_segments(inner, "I")])
    members = _propagate_membership(arr, 2)
    return not any(("I" in members[f]) and ("O" not in members[f]) for f in range(arr.n_faces))


def region_equal(a: Region, b: Region) -> bool:
    return region_contains_region(a, b) and region_contains_region(b, a)


def intersection_area(a: Region, b: Region):
    arr = Arrangement([*_ring_segments(a, "A"), *_ring_segments(b, "B")])
    members = _propagate_membership(arr, 2)
    return sum((arr.face_area(f) for f in range(arr.n_faces) if {"A", "B"} <= members[f]), Q(0))


def segment_on_region_boundary(region: Region, p, q) -> bool:
    """True if the closed segment pq is covered by boundary edges of ``region``."""
    from .kernel import param_on

    covered = []
    for a, b in region.boundary_segments():
        if orient_sign(p, q, a) == 0 and orient_sign(p, q, b) == 0:
            ta, tb = param_on(p, q, a), param_on(p, q, b)
            lo, hi = min(ta, tb), max(ta, tb)
            if hi > 0 and lo < 1:
                covered.append((max(lo, Q(0)), min(hi, Q(1))))
    covered.sort()
    reach = Q(0)
    for lo, hi in covered:
        if lo > reach:
            return False
        reach = max(reach, hi)
    return reach >= 1
