from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from diffvis.kernel import (
    Empty, Orientation, Overlap, P, PointHit, Q, Ray, Segment, format_q, intersect_segments,
    line_intersection, orient, orient_sign, ray_intersection,
)
from diffvis.polygon import BoundaryPoint, ray_shoot, ray_shoot_point

rationals = st.fractions(min_value=-50, max_value=50, max_denominator=40)
points = st.tuples(rationals, rationals).map(lambda t: P(*t))


def test_q_rejects_floats():
    with pytest.raises(TypeError):
        Q(0.5)
    assert Q("6/4") == Q(3) / 2
    assert format_q(Q("6/4")) == "3/2"
    assert format_q(Q(-4)) == "-4"


def test_orient_examples():
    assert orient(P(0, 0), P(1, 0), P(0, 1)) == Orientation.CCW
    assert orient(P(0, 0), P(1, 0), P(0, -1)) == Orientation.CW
    assert orient(P(0, 0), P(1, 1), P(3, 3)) == Orientation.COLLINEAR


def test_orient_thin_triangle_is_exact():
    eps = Q(1) / 10**30
    assert orient_sign(P(0, 0), P(1, 1), P(2, 2 + eps)) == 1
    assert orient_sign(P(0, 0), P(1, 1), P(2, 2 - eps)) == -1


def test_intersect_examples():
    assert intersect_segments((P(0, 0), P(2, 2)), (P(0, 2), P(2, 0))) == PointHit(P(1, 1))
    hit = intersect_segments((P(0, 0), P(2, 0)), (P(1, 0), P(3, 0)))
    assert isinstance(hit, Overlap) and hit.segment == Segment(P(1, 0), P(2, 0))
    assert intersect_segments((P(0, 0), P(1, 0)), (P(0, 1), P(1, 1))) == Empty()
    assert intersect_segments((P(0, 0), P(1, 0)), (P(1, 0), P(1, 5))) == PointHit(P(1, 0))


def test_line_and_ray_intersection():
    assert line_intersection(P(0, 0), P(1, 0), P(3, -1), P(3, 1)) == P(3, 0)
    with pytest.raises(ValueError):
        line_intersection(P(0, 0), P(1, 0), P(0, 1), P(1, 1))
    assert ray_intersection(Ray(P(0, 0), P(1, 0)), Ray(P(2, -1), P(2, 0))) == P(2, 0)
    assert ray_intersection(Ray(P(0, 0), P(-1, 0)), Ray(P(2, -1), P(2, 0))) is None


def test_ray_shoot_square(square):
    c = P(Q(1) / 2, Q(1) / 2)
    assert ray_shoot_point(square, c, P(1, Q(1) / 2)) == P(1, Q(1) / 2)
    # a corner hit is reported at the end of the preceding edge
    assert ray_shoot(square, Ray(c, P(1, 1))) == BoundaryPoint(1, 1)
    assert ray_shoot_point(square, c, P(1, 1)) == P(1, 1)


def test_ray_shoot_vertex_rule_vs_exit_point(construction):
    """Literal ray_shoot stops at vertex f; the first exit from closed P is f'."""
    from diffvis.counterexample import exit_point

    c = construction
    assert ray_shoot_point(c.polygon, c["x"], c["f"]) == c["f"]
    assert exit_point(c.polygon, c["x"], c["f"]) == c["f'"]


@given(points, points, points)
def test_orient_antisymmetric(a, b, c):
    assert orient_sign(a, b, c) == -orient_sign(b, a, c)
    assert orient_sign(a, b, c) == orient_sign(b, c, a)


@given(points, points, points, points)
def test_orient_translation_invariant(a, b, c, t):
    assert orient_sign(a, b, c) == orient_sign(a + t, b + t, c + t)


@given(points, points, points, points)
def test_intersection_symmetric(a, b, c, d):
    if a == b or c == d:
        return
    h1 = intersect_segments((a, b), (c, d))
    h2 = intersect_segments((c, d), (a, b))
    assert type(h1) is type(h2)
    if isinstance(h1, PointHit):
        assert h1.point == h2.point
    if isinstance(h1, Overlap):
        assert set(h1.segment) == set(h2.segment)


def test_orient_matches_fraction_determinant():
    import random

    rng = random.Random(7)
    for _ in range(1000):
        pts = [(Fraction(rng.randint(-99, 99), rng.randint(1, 9)), Fraction(rng.randint(-99, 99), rng.randint(1, 9)))
               for _ in range(3)]
        (ax, ay), (bx, by), (cx, cy) = pts
        det = (bx - ax) * (cy - ay) - (by - ay) * (cx - ax)
        expected = (det > 0) - (det < 0)
        assert orient_sign(*(P(*p) for p in pts)) == expected
