from collections import Counter

from hypothesis import given
from hypothesis import strategies as st

from diffvis.diffuse import lit_segments
from diffvis.explorer import random_convex_polygon, random_simple_polygon, source_for
from diffvis.kernel import P, Q, midpoint
from diffvis.polygon import in_interior
from diffvis.regions import Region, region_contains_region, region_equal
from diffvis.visibility import (
    ChordCache, sees, sees_closed, sees_segment, visibility_from_point, visible_intervals,
    weak_visibility_from_segment,
)

H = Q(1) / 2


def grid(poly, steps=17):
    x0, y0, x1, y1 = poly.bbox
    for i in range(1, steps):
        for j in range(1, steps):
            p = P(x0 + (x1 - x0) * Q(i) / steps, y0 + (y1 - y0) * Q(j) / steps)
            if in_interior(poly, p):
                yield p


def test_sees_examples(square, lshape):
    assert sees(square, P(H, H), P("1/10", "9/10"))
    assert sees(lshape, P(H, H), P("7/4", "3/4"))
    assert not sees(lshape, P(H, "15/8"), P("15/8", H))


def test_grazing_and_vertex_contacts_block(square, lshape):
    # running along an edge
    assert not sees(square, P(0, 0), P(1, 0))
    assert sees_closed(square, P(0, 0), P(1, 0))
    # passing through the reflex vertex (1, 1)
    assert not sees(lshape, P(H, "3/2"), P("3/2", H))
    assert sees_closed(lshape, P(H, "3/2"), P("3/2", H))
    # a point sees itself iff it is in closed P
    assert sees(square, P(1, 1), P(1, 1)) and not sees(square, P(2, 2), P(2, 2))


def test_l_shape_star_center(lshape):
    vp = visibility_from_point(lshape, P(H, H))
    assert region_equal(vp.region, Region.from_polygon(lshape))
    assert vp.windows() == []


def test_l_shape_arm_shadow(lshape):
    s = P("1/4", "7/4")
    vp = visibility_from_point(lshape, s)
    assert vp.contains(P("15/8", H)) < 0
    assert vp.contains(P("1/10", "1/10")) > 0
    assert len(vp.windows()) == 1
    p, q = vp.windows()[0]
    assert P(1, 1) in (p, q)


def test_convex_sees_everything():
    for seed in range(5):
        poly = random_convex_polygon(9, seed)
        vp = visibility_from_point(poly, source_for(poly, seed))
        assert region_equal(vp.region, Region.from_polygon(poly))
        assert sorted(e for *_, e in vp.lit_arcs()) == list(range(poly.n))


def test_visible_intervals(notched):
    # from the left arm the right arm's top edge is hidden; the floor is visible up to
    # where the line through the notch corner (2, 2) lands
    y = P(1, "9/2")
    assert visible_intervals(notched, y, P(4, 4), P(3, 4)) == []
    assert not sees_segment(notched, y, P(4, 4), P(3, 4))
    assert visible_intervals(notched, y, P(4, 0), P(4, 4)) == []
    assert visible_intervals(notched, y, P(0, 0), P(4, 0)) == [(0, Q(7) / 10)]


def test_weak_visibility_of_bottom_edge(notched):
    wv = weak_visibility_from_segment(notched, P(0, 0), P(4, 0))
    # the whole U is weakly visible from the bottom edge
    assert region_equal(wv.region, Region.from_polygon(notched))
    wv_top = weak_visibility_from_segment(notched, P(4, 4), P(3, 4))
    assert wv_top.contains(P(1, "9/2")) < 0
    assert wv_top.contains(P("7/2", 1)) > 0


def test_point_reflector_equals_point_visibility(notched):
    p = P(4, 1)
    assert region_equal(weak_visibility_from_segment(notched, p, p).region,
                        visibility_from_point(notched, p).region)


def test_construction_v0_lit_arcs(construction):
    c = construction
    vp = visibility_from_point(c.polygon, c.source)
    lits = lit_segments(c.polygon, vp.region)
    edges = {l.edge for l in lits}
    # the top wall xy is lit straight through the doorway ab
    assert c.vertices["x"] in edges
    assert c.vertices["a"] in edges


@given(st.integers(6, 16), st.integers(0, 10**5))
def test_one_lit_arc_per_edge_and_simply_connected(n, seed):
    poly = random_simple_polygon(n, seed)
    vp = visibility_from_point(poly, source_for(poly, seed))
    assert len(vp.region.faces) == 1 and vp.region.n_holes == 0
    counts = Counter(l.edge for l in lit_segments(poly, vp.region))
    assert all(v <= 1 for v in counts.values())


@given(st.integers(6, 12), st.integers(0, 10**5))
def test_visibility_matches_brute_force(n, seed):
    poly = random_simple_polygon(n, seed)
    s = source_for(poly, seed)
    vp = visibility_from_point(poly, s)
    for p in grid(poly, 9):
        side = vp.contains(p)
        if side != 0:
            assert (side > 0) == sees(poly, s, p), p


@given(st.integers(6, 12), st.integers(0, 10**5), st.integers(0, 11))
def test_weak_visibility_contains_midpoint_view(n, seed, e):
    poly = random_simple_polygon(n, seed)
    a, b = poly.edge(e % n)
    cache = ChordCache(poly)
    wv = weak_visibility_from_segment(poly, a, b, cache)
    assert region_contains_region(wv.region, visibility_from_point(poly, midpoint(a, b), cache).region)
    for p in grid(poly, 7):
        side = wv.contains(p)
        if side != 0:
            assert (side > 0) == sees_segment(poly, p, a, b), p


@given(st.integers(6, 12), st.integers(0, 10**5), st.integers(0, 11))
def test_weak_visibility_monotone_in_segment(n, seed, e):
    poly = random_simple_polygon(n, seed)
    a, b = poly.edge(e % n)
    cache = ChordCache(poly)
    whole = weak_visibility_from_segment(poly, a, b, cache).region
    part = weak_visibility_from_segment(poly, midpoint(a, b), b, cache).region
    assert region_contains_region(whole, part)
