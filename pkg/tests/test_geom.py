"""Planar and projective geometry primitives."""

import random
from fractions import Fraction

import pytest

from triarea import Polygon, ProjectivePoint, polygon_area, triangle_area
from triarea.geom import (on_segment, open_segments_intersect, orientation,
                          point_in_polygon_strict, polygon_area_exact,
                          segments_intersect, triangle_area_exact)


class TestTriangleArea:
    def test_unit_right_triangle(self):
        # [TRIVIAL] half base times height
        assert triangle_area((0, 0), (1, 0), (0, 1)) == 0.5
        assert triangle_area_exact(
            (Fraction(0), Fraction(0)), (Fraction(1), Fraction(0)),
            (Fraction(0), Fraction(1))) == Fraction(1, 2)

    def test_orientation_flip_negates(self):
        # [TRIVIAL] swapping two vertices negates the signed area
        a, b, c = (0, 0), (3, 1), (1, 4)
        assert triangle_area(a, b, c) == -triangle_area(a, c, b)

    def test_degenerate_is_zero(self):
        assert triangle_area((0, 0), (1, 1), (2, 2)) == 0

    def test_complex_arguments(self):
        # the determinant formula extends to complex coordinates
        val = triangle_area((0j, 0j), (1 + 1j, 0j), (0j, 2 - 1j))
        assert val == (1 + 1j) * (2 - 1j) / 2


class TestPolygonArea:
    def test_unit_square(self):
        pts = [(0, 0), (1, 0), (1, 1), (0, 1)]
        assert polygon_area(pts, (5, -3)) == 1
        exact = [(Fraction(x), Fraction(y)) for x, y in pts]
        assert polygon_area_exact(exact) == 1

    def test_reference_independence(self):
        # [DERIVED] value must not depend on the reference point
        rng = random.Random(7)
        pts = [(0, 0), (2, 0), (3, 2), (1, 3), (-1, 2)]
        base = polygon_area(pts, (0, 0))
        assert base == 8  # [DERIVED] shoelace by hand
        for _ in range(20):
            ref = (rng.uniform(-10, 10) + rng.uniform(-10, 10) * 1j,
                   rng.uniform(-10, 10))
            assert abs(polygon_area(pts, ref) - base) < 1e-9

    def test_too_few_points(self):
        with pytest.raises(ValueError):
            polygon_area([(0, 0), (1, 1)], (0, 0))


class TestProjectivePoint:
    def test_canonicalize_pivot_is_one(self):
        p = ProjectivePoint(2 + 0j, 4 + 0j, 1 + 0j).canonicalize()
        assert p.y == 1
        assert p.x == 0.5
        assert p.z == 0.25

    def test_at_infinity(self):
        assert ProjectivePoint(1e9, 0, 1).at_infinity()
        assert not ProjectivePoint(1, 2, 1).at_infinity()

    def test_all_zero_rejected(self):
        with pytest.raises(ValueError):
            ProjectivePoint(0, 0, 0)

    def test_from_affine(self):
        p = ProjectivePoint.from_affine(3, 4)
        assert (p.x, p.y, p.z) == (3, 4, 1)


def _q(x, y):
    return (Fraction(x), Fraction(y))


class TestExactPredicates:
    def test_orientation_signs(self):
        assert orientation(_q(0, 0), _q(1, 0), _q(0, 1)) == 1
        assert orientation(_q(0, 0), _q(0, 1), _q(1, 0)) == -1
        assert orientation(_q(0, 0), _q(1, 1), _q(2, 2)) == 0

    def test_on_segment(self):
        assert on_segment(_q("1/2", "1/2"), _q(0, 0), _q(1, 1))
        assert on_segment(_q(1, 1), _q(0, 0), _q(1, 1))  # endpoint included
        assert not on_segment(_q(2, 2), _q(0, 0), _q(1, 1))
        assert not on_segment(_q("1/2", "1/3"), _q(0, 0), _q(1, 1))

    def test_proper_crossing(self):
        assert segments_intersect(_q(0, 0), _q(2, 2), _q(0, 2), _q(2, 0))
        assert open_segments_intersect(_q(0, 0), _q(2, 2), _q(0, 2), _q(2, 0))

    def test_endpoint_touch_open_vs_closed(self):
        # sharing one endpoint: closed yes, open no
        assert segments_intersect(_q(0, 0), _q(1, 0), _q(1, 0), _q(2, 1))
        assert not open_segments_intersect(_q(0, 0), _q(1, 0), _q(1, 0), _q(2, 1))

    def test_endpoint_on_interior_open(self):
        # endpoint of one segment interior to the other: open no
        assert not open_segments_intersect(
            _q(0, 0), _q(2, 0), _q(1, 0), _q(1, 5))

    def test_collinear_overlap(self):
        assert open_segments_intersect(_q(0, 0), _q(2, 0), _q(1, 0), _q(3, 0))
        assert not open_segments_intersect(_q(0, 0), _q(1, 0), _q(1, 0), _q(2, 0))
        # vertical collinear case exercises the axis switch
        assert open_segments_intersect(_q(0, 0), _q(0, 2), _q(0, 1), _q(0, 3))

    def test_disjoint(self):
        assert not segments_intersect(_q(0, 0), _q(1, 0), _q(0, 1), _q(1, 1))


class TestPointInPolygon:
    SQUARE = [_q(0, 0), _q(1, 0), _q(1, 1), _q(0, 1)]

    def test_inside(self):
        assert point_in_polygon_strict(_q("1/2", "1/2"), self.SQUARE)

    def test_boundary_excluded(self):
        assert not point_in_polygon_strict(_q("1/2", 0), self.SQUARE)
        assert not point_in_polygon_strict(_q(0, 0), self.SQUARE)

    def test_outside(self):
        assert not point_in_polygon_strict(_q(2, "1/2"), self.SQUARE)
        assert not point_in_polygon_strict(_q("-1/2", "1/2"), self.SQUARE)

    def test_nonconvex(self):
        arrow = [_q(0, 0), _q(4, 0), _q(4, 4), _q(2, 1), _q(0, 4)]
        assert point_in_polygon_strict(_q(1, 1), arrow)
        assert not point_in_polygon_strict(_q(2, 3), arrow)  # in the notch


class TestPolygonValidation:
    def test_clockwise_rejected(self):
        with pytest.raises(ValueError, match="anticlockwise"):
            Polygon.from_pairs([(0, 0), (0, 1), (1, 1), (1, 0)])

    def test_self_intersection_rejected(self):
        with pytest.raises(ValueError):
            Polygon.from_pairs([(0, 0), (1, 1), (1, 0), (0, 1)])  # bowtie

    def test_repeated_vertex_rejected(self):
        with pytest.raises(ValueError, match="repeated"):
            Polygon.from_pairs([(0, 0), (1, 0), (1, 0), (0, 1)])

    def test_vertex_lookup_one_based(self, ):
        p = Polygon.from_pairs([(0, 0), (1, 0), (0, 1)])
        assert p.vertex(1) == (0, 0)
        assert p.vertex(3) == (0, 1)
        assert p.n == 3
        assert p.area() == Fraction(1, 2)
