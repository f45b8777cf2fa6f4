import json

from hypothesis import given, settings
from hypothesis import strategies as st

from diffvis.diffuse import compute_Vk
from diffvis.explorer import random_convex_polygon, random_simple_polygon, source_for
from diffvis.kernel import P, Q
from diffvis.oracle import compare_with_analytic, default_delta, make_samples, oracle_reachable


def test_sample_set_layout(square):
    ss = make_samples(square, m=3, delta=Q(1) / 4)
    assert ss.n_edge_samples == 12
    # interior grid points of pitch 1/4 strictly inside the unit square
    assert ss.n_grid_samples == 9
    assert ss.points[0] == P("1/4", 0)
    assert default_delta(square, 8) == Q(1) / 8


def test_convex_fully_reached_at_depth_0():
    poly = random_convex_polygon(8, 1)
    s = source_for(poly, 1)
    ss = make_samples(poly, m=8)
    reached = oracle_reachable(poly, s, 1, samples=ss)
    assert len(reached) == len(ss.points)
    assert set(reached.values()) == {0}


def test_l_shape_depths(lshape):
    s = P("1/4", "7/4")
    ss = make_samples(lshape, m=8, delta=Q(1) / 8)
    reached = oracle_reachable(lshape, s, 2, samples=ss)
    assert len(reached) == len(ss.points)
    assert set(reached.values()) == {0, 1}
    hidden = ss.points.index(P("15/8", "1/2"))
    assert reached[hidden] == 1
    rep = compare_with_analytic(lshape, s, 2, m=8, delta=Q(1) / 8)
    assert rep.sound and not rep.incompleteness


def test_depth_zero_equals_v0(lshape):
    s = P("1/4", "7/4")
    ss = make_samples(lshape, m=8, delta=Q(1) / 8)
    reached = oracle_reachable(lshape, s, 0, samples=ss)
    v0 = compute_Vk(lshape, s, 0).region
    for i, p in enumerate(ss.points):
        side = v0.contains(p)
        if ss.edge[i] < 0 and side != 0:
            assert (i in reached) == (side > 0)


def test_construction_is_sound(construction):
    c = construction
    rep = compare_with_analytic(c.polygon, c.source, 2, m=16)
    assert rep.sound, rep.dumps()
    data = json.loads(rep.dumps())
    assert data["soundness_violations"] == 0 and data["k"] == 2


@settings(max_examples=10)
@given(st.integers(6, 12), st.integers(0, 10**5))
def test_reachability_monotone_in_k(n, seed):
    poly = random_simple_polygon(n, seed)
    s = source_for(poly, seed)
    ss = make_samples(poly, m=6, delta=default_delta(poly, 12))
    r1 = oracle_reachable(poly, s, 1, samples=ss)
    r2 = oracle_reachable(poly, s, 2, samples=ss)
    assert set(r1) <= set(r2)
    assert all(r2[i] == d for i, d in r1.items())


@settings(max_examples=10)
@given(st.integers(6, 14), st.integers(0, 10**5))
def test_random_instances_sound(n, seed):
    poly = random_simple_polygon(n, seed)
    rep = compare_with_analytic(poly, source_for(poly, seed), 2, m=8, delta=default_delta(poly, 16))
    assert rep.sound, rep.dumps()
