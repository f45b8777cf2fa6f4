import pytest
from hypothesis import given
from hypothesis import strategies as st

from diffvis.explorer import random_convex_polygon, random_simple_polygon
from diffvis.kernel import P, Q
from diffvis.polygon import (
    BoundaryArc, BoundaryPoint, Location, PolygonError, SimplePolygon, boundary_arc_points,
    classify_point, in_closed, in_interior, locate_on_boundary, validate,
)

from conftest import poly


def test_validate_examples(square, lshape):
    assert validate(square).valid and validate(square).general_position
    rep = validate(lshape)
    assert rep.valid and rep.simple
    assert not lshape.is_convex() and lshape.reflex == (3,)


def test_validate_rejects_clockwise():
    cw = poly((0, 0), (0, 1), (1, 1), (1, 0))
    rep = validate(cw)
    assert rep.simple and not rep.valid
    assert "counterclockwise" in " ".join(rep.problems())


def test_validate_rejects_bowtie():
    rep = validate(poly((0, 0), (1, 1), (1, 0), (0, 1)))
    assert not rep.simple and rep.crossings


def test_collinear_hexagon_is_valid_but_not_general():
    hexa = poly((0, 0), (1, 0), (2, 0), (2, 1), (1, 1), (0, 1))
    rep = validate(hexa)
    assert rep.valid and not rep.general_position
    assert (0, 1, 2) in rep.collinear_triples


def test_from_json_rejects_invalid():
    with pytest.raises(PolygonError):
        SimplePolygon.from_json({"vertices": [["0", "0"], ["0", "1"], ["1", "0"]]})
    with pytest.raises(PolygonError):
        SimplePolygon.from_json({"verts": []})


def test_json_round_trip(lshape):
    half = poly(("1/2", 0), (3, "1/3"), (0, 2))
    for p in (lshape, half):
        assert SimplePolygon.from_json(p.to_json()) == p
        assert SimplePolygon.from_json(p.dumps()) == p
    assert half.to_json()["vertices"][0] == ["1/2", "0"]


def test_classify(lshape):
    assert classify_point(lshape, P("1/2", "1/2"))[0] is Location.INTERIOR
    assert classify_point(lshape, P("3/2", "3/2"))[0] is Location.EXTERIOR
    loc, bp = classify_point(lshape, P(2, "1/2"))
    assert loc is Location.BOUNDARY and bp == BoundaryPoint(1, Q(1) / 2)
    assert in_closed(lshape, P(1, 1)) and not in_interior(lshape, P(1, 1))


def test_vertex_address_is_canonical(square):
    assert locate_on_boundary(square, P(1, 0)) == BoundaryPoint(1, 0)
    assert BoundaryPoint(0, 1).canonical(4) == BoundaryPoint(1, 0)
    assert locate_on_boundary(square, P(2, 2)) is None
    with pytest.raises(ValueError):
        BoundaryPoint(0, 2)


def test_boundary_arcs(square):
    mid = lambda e: BoundaryPoint(e, Q(1) / 2)
    assert boundary_arc_points(square, BoundaryArc(mid(0), mid(1))) == [P("1/2", 0), P(1, 0), P(1, "1/2")]
    # the arc wraps around past vertex 0
    assert boundary_arc_points(square, BoundaryArc(mid(3), mid(0))) == [P(0, "1/2"), P(0, 0), P("1/2", 0)]
    assert boundary_arc_points(square, BoundaryArc(BoundaryPoint(0, Q(1) / 4), BoundaryPoint(0, Q(3) / 4))) == [
        P("1/4", 0), P("3/4", 0)]


@given(st.integers(0, 3), st.fractions(0, 1, max_denominator=8), st.integers(0, 3),
       st.fractions(0, 1, max_denominator=8), st.integers(0, 3), st.fractions(0, 1, max_denominator=8))
def test_arc_concatenation(e1, t1, e2, t2, e3, t3):
    """bd(p, q) followed by bd(q, r) walks bd(p, r) when q lies on bd(p, r)."""
    sq = poly((0, 0), (1, 0), (1, 1), (0, 1))
    a, b, c = (BoundaryPoint(e, t).canonical(4) for e, t in ((e1, t1), (e2, t2), (e3, t3)))
    pos = lambda bp: bp.edge + bp.t
    # order b after a and c after b, going counterclockwise from a
    rel = lambda bp: (pos(bp) - pos(a)) % 4
    if not 0 < rel(b) < rel(c):
        return
    left = boundary_arc_points(sq, BoundaryArc(a, b))
    right = boundary_arc_points(sq, BoundaryArc(b, c))
    joined = left + right[1:]
    # q itself is a polyline vertex only when it is a polygon corner
    if b.t != 0:
        joined.remove(b.point(sq))
    assert joined == boundary_arc_points(sq, BoundaryArc(a, c))


@given(st.integers(6, 24), st.integers(0, 10**6))
def test_generated_polygons_are_valid(n, seed):
    p = random_simple_polygon(n, seed)
    rep = validate(p)
    assert rep.valid and rep.general_position and p.n == n


@given(st.integers(3, 16), st.integers(0, 10**6))
def test_generated_convex_polygons(n, seed):
    p = random_convex_polygon(n, seed)
    assert validate(p).valid and p.is_convex
