"""Exact planar overlay of segments with face extraction.

The arrangement is a half-edge structure: half-edge ``h`` and its twin ``h ^ 1``
share edge ``h >> 1``. Bounded faces are traversed counterclockwise with the
face on the left; face ``-1`` is the unbounded face.
"""
from __future__ import annotations

from collections import defaultdict

from .kernel import Overlap, Point, PointHit, angle_key, intersect_segments, orient_sign
from .polygon import point_in_ring

UNBOUNDED = -1


def ring_area2(ring) -> object:
    acc = 0
    n = len(ring)
    for i in range(n):
        x0, y0 = ring[i]
        x1, y1 = ring[(i + 1) % n]
        acc += x0 * y1 - x1 * y0
    return acc


def simplify_ring(ring, keep=frozenset()) -> list:
    """Drop straight-through collinear vertices, except those listed in ``keep``."""
    pts = list(ring)
    changed = True
    while changed and len(pts) > 3:
        changed = False
        out = []
        n = len(pts)
        for i in range(n):
            a, b, c = pts[i - 1], pts[i], pts[(i + 1) % n]
            if b not in keep and orient_sign(a, b, c) == 0 and (
                (b[0] - a[0]) * (c[0] - b[0]) + (b[1] - a[1]) * (c[1] - b[1]) > 0
            ):
                changed = True
                continue
            out.append(b)
        pts = out
    return pts


def interior_point(rings) -> Point:
    """A point strictly inside the even-odd region bounded by ``rings``."""
    ys = sorted({v[1] for ring in rings for v in ring})
    if len(ys) < 2:
        raise ValueError("degenerate region")
    for lo, hi in zip(ys, ys[1:]):
        c = (lo + hi) / 2
        xs = []
        for ring in rings:
            n = len(ring)
            for i in range(n):
                a, b = ring[i], ring[(i + 1) % n]
                if (a[1] > c) != (b[1] > c):
                    xs.append(a[0] + (c - a[1]) * (b[0] - a[0]) / (b[1] - a[1]))
        xs.sort()
        for i in range(0, len(xs) - 1, 2):
            if xs[i] < xs[i + 1]:
                return Point((xs[i] + xs[i + 1]) / 2, c)
    raise ValueError("region has no interior")


def _segments_overlap_candidates(segs):
    """Pairs of segment indices whose bounding boxes intersect (exact sort-and-sweep)."""
    boxes = []
    for i, (p, q) in enumerate(segs):
        boxes.append((min(p[0], q[0]), max(p[0], q[0]), min(p[1], q[1]), max(p[1], q[1]), i))
    boxes.sort(key=lambda b: b[0])
    active = []
    for box in boxes:
        x0 = box[0]
        active = [a for a in active if a[1] >= x0]
        for a in active:
            if a[2] <= box[3] and box[2] <= a[3]:
                yield a[4], box[4]
        active.append(box)


class Arrangement:
    """Overlay of tagged segments.

    ``segments`` is an iterable of ``(p, q, tag)``; coincident pieces are merged and
    their tags collected (with multiplicity) in ``edge_tags``.
    """

    def __init__(self, segments):
        segs = []
        tags = []
        for p, q, tag in segments:
            p = Point(*p)
            q = Point(*q)
            if p == q:
                continue
            segs.append((p, q))
            tags.append(tag)
        self._build(segs, tags)

    def _build(self, segs, tags):
        cuts = [[p, q] for p, q in segs]
        for i, j in _segments_overlap_candidates(segs):
            hit = intersect_segments(segs[i], segs[j])
            if isinstance(hit, PointHit):
                cuts[i].append(hit.point)
                cuts[j].append(hit.point)
            elif isinstance(hit, Overlap):
                cuts[i].extend(hit.segment)
                cuts[j].extend(hit.segment)
        edges: dict = {}
        for (p, q), pts, tag in zip(segs, cuts, tags):
            pts = sorted(set(pts))
            for u, v in zip(pts, pts[1:]):
                edges.setdefault((u, v), []).append(tag)

        vid: dict = {}
        verts = []
        for u, v in edges:
            for w in (u, v):
                if w not in vid:
                    vid[w] = len(verts)
                    verts.append(w)
        self.vertices = verts
        self.vertex_id = vid
        origin = []
        self.edge_tags = []
        for (u, v), etags in edges.items():
            origin.append(vid[u])
            origin.append(vid[v])
            self.edge_tags.append(etags)
        self.origin = origin
        nh = len(origin)
        out = [[] for _ in verts]
        for h in range(nh):
            out[origin[h]].append(h)
        pos = [0] * nh
        for v, hs in enumerate(out):
            o = verts[v]
            hs.sort(key=lambda h: angle_key((verts[origin[h ^ 1]][0] - o[0], verts[origin[h ^ 1]][1] - o[1])))
            for k, h in enumerate(hs):
                pos[h] = k
        self.out = out
        nxt = [0] * nh
        for h in range(nh):
            t = h ^ 1
            v = origin[t]
            hs = out[v]
            nxt[h] = hs[(pos[t] - 1) % len(hs)]
        self.next = nxt

        # cycles
        cycle_of = [-1] * nh
        cycles = []
        for h in range(nh):
            if cycle_of[h] >= 0:
                continue
            cyc = []
            g = h
            while cycle_of[g] < 0:
                cycle_of[g] = len(cycles)
                cyc.append(g)
                g = nxt[g]
            cycles.append(cyc)
        self.cycles = cycles
        areas = [ring_area2([verts[origin[g]] for g in cyc]) for cyc in cycles]

        # connected components of the edge graph
        parent = list(range(len(verts)))

        def find(a):
            while parent[a] != a:
                parent[a] = parent[parent[a]]
                a = parent[a]
            return a

        for e in range(nh // 2):
            ra, rb = find(origin[2 * e]), find(origin[2 * e + 1])
            if ra != rb:
                parent[ra] = rb
        comp_of_cycle = [find(origin[cyc[0]]) for cyc in cycles]

        face_of_cycle = [UNBOUNDED] * len(cycles)
        faces = []
        for ci, a in enumerate(areas):
            if a > 0:
                face_of_cycle[ci] = len(faces)
                faces.append(ci)
        self.face_outer = faces
        self.face_holes = [[] for _ in faces]
        outer_rings = [[verts[origin[g]] for g in cycles[ci]] for ci in faces]
        for ci, a in enumerate(areas):
            if a > 0:
                continue
            probe = verts[origin[cycles[ci][0]]]
            best = None
            for fi, oc in enumerate(faces):
                if comp_of_cycle[oc] == comp_of_cycle[ci]:
                    continue
                if point_in_ring(outer_rings[fi], probe) > 0:
                    if best is None or areas[oc] < areas[faces[best]]:
                        best = fi
            if best is not None:
                face_of_cycle[ci] = best
                self.face_holes[best].append(ci)
        self.face_of = [face_of_cycle[cycle_of[h]] for h in range(nh)]
        self.cycle_of = cycle_of
        self._areas2 = areas

    # --- accessors -------------------------------------------------------

    @property
    def n_faces(self) -> int:
        return len(self.face_outer)

    def dest(self, h):
        return self.origin[h ^ 1]

    def cycle_ring(self, ci) -> list:
        return [self.vertices[self.origin[g]] for g in self.cycles[ci]]

    def face_rings(self, f) -> list:
        rings = [self.cycle_ring(self.face_outer[f])]
        rings.extend(self.cycle_ring(ci) for ci in self.face_holes[f])
        return rings

    def face_area(self, f):
        a = self._areas2[self.face_outer[f]]
        for ci in self.face_holes[f]:
            a += self._areas2[ci]
        return a / 2

    def face_sample(self, f) -> Point:
        return interior_point(self.face_rings(f))

    def face_halfedges(self, f):
        for ci in [self.face_outer[f], *self.face_holes[f]]:
            yield from self.cycles[ci]

    def neighbors(self, f):
        """Yield (neighbour face, edge index) across every half-edge bounding f."""
        for h in self.face_halfedges(f):
            yield self.face_of[h ^ 1], h >> 1

    def unbounded_neighbors(self):
        for h, f in enumerate(self.face_of):
            if f == UNBOUNDED:
                yield self.face_of[h ^ 1], h >> 1

    def adjacency(self):
        """Map face -> list of (neighbour, edge), including the unbounded face."""
        adj = defaultdict(list)
        for h, f in enumerate(self.face_of):
            adj[f].append((self.face_of[h ^ 1], h >> 1))
        return adj

    def locate(self, p) -> int:
        """Bounded face containing p in its interior, UNBOUNDED, or None when p lies on an edge/vertex."""
        best = UNBOUNDED
        for f in range(self.n_faces):
            rings = self.face_rings(f)
            s = point_in_ring(rings[0], p)
            if s == 0:
                return None
            if s < 0:
                continue
            inside = True
            for r in rings[1:]:
                t = point_in_ring(r, p)
                if t == 0:
                    return None
                if t > 0:
                    inside = False
                    break
            if inside:
                best = f
        return best

    # --- labelled extraction ---------------------------------------------

    def trace_boundary(self, label) -> list:
        """Boundary cycles (lists of points, region on the left) of the union of faces with label True."""

        def inside(f):
            return f != UNBOUNDED and label[f]

        nh = len(self.origin)
        face_of = self.face_of
        nxt = self.next
        seen = [False] * nh
        rings = []
        for h in range(nh):
            if seen[h] or not inside(face_of[h]) or inside(face_of[h ^ 1]):
                continue
            ring_h = []
            g = h
            while not seen[g]:
                seen[g] = True
                ring_h.append(g)
                c = nxt[g]
                while inside(face_of[c ^ 1]):
                    c = nxt[c ^ 1]
                g = c
            rings.append(ring_h)
        return rings

    def components(self, label, through_vertices=False) -> list:
        """Connected components (lists of faces) of the faces with label True."""
        parent = {f: f for f in range(self.n_faces) if label[f]}

        def find(a):
            while parent[a] != a:
                parent[a] = parent[parent[a]]
                a = parent[a]
            return a

        def union(a, b):
            ra, rb = find(a), find(b)
            if ra != rb:
                parent[ra] = rb

        for h, f in enumerate(self.face_of):
            g = self.face_of[h ^ 1]
            if f in parent and g in parent:
                union(f, g)
        if through_vertices:
            for hs in self.out:
                fs = [self.face_of[h] for h in hs if self.face_of[h] in parent]
                for a, b in zip(fs, fs[1:]):
                    union(a, b)
        groups = defaultdict(list)
        for f in parent:
            groups[find(f)].append(f)
        return sorted(groups.values(), key=min)
