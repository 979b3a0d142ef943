"""Area equations: exact coefficients, compiled evaluation, Jacobians."""

import random
from fractions import Fraction

import numpy as np
import pytest

from triarea import (AreaAssignment, SparsePoly, build_system, face_area_sum,
                     face_determinant, fan_type)

from conftest import HAND_CONE_AREAS


class TestSparsePoly:
    def test_arithmetic(self):
        x = SparsePoly.variable(2, 0)
        y = SparsePoly.variable(2, 1)
        p = (x + y) * (x - y)
        assert p == x * x - y * y
        assert p.total_degree() == 2
        assert p.degree_in(0) == 2

    def test_eval_exact_matches_eval_complex(self):
        rng = random.Random(3)
        x = SparsePoly.variable(2, 0)
        y = SparsePoly.variable(2, 1)
        p = x * x * y - y.scale(3) + SparsePoly.constant(2, Fraction(5, 7))
        for _ in range(10):
            fx = Fraction(rng.randrange(-20, 20), rng.randrange(1, 9))
            fy = Fraction(rng.randrange(-20, 20), rng.randrange(1, 9))
            exact = p.eval_exact([fx, fy])
            approx = p.eval_complex([complex(fx), complex(fy)])
            assert abs(complex(exact) - approx) < 1e-9

    def test_diff(self):
        x = SparsePoly.variable(1, 0)
        p = x * x * x  # x^3
        assert p.diff(0) == (x * x).scale(3)

    def test_zero_coefficients_dropped(self):
        x = SparsePoly.variable(1, 0)
        assert (x - x).is_zero()


class TestAreaAssignment:
    def test_equal_split_sums_to_polygon_area(self, unit_square, cone4):
        areas = AreaAssignment.equal(cone4, unit_square)
        assert areas.total() == 1
        assert areas.area_of((1, 2, 5)) == Fraction(1, 4)

    def test_face_rotation_invariant_lookup(self, unit_square, cone4):
        areas = AreaAssignment.equal(cone4, unit_square)
        assert areas.area_of((5, 1, 2)) == areas.area_of((1, 2, 5))

    def test_from_list_length_check(self, cone4):
        with pytest.raises(ValueError):
            AreaAssignment.from_list(cone4, [1, 2, 3])

    def test_missing_face_raises(self, unit_square, cone4):
        areas = AreaAssignment.equal(cone4, unit_square)
        with pytest.raises(KeyError):
            areas.area_of((1, 2, 3))


class TestBuildSystem:
    def test_cone_equations_vanish_at_hand_solution(self, unit_square, cone4):
        # [DERIVED] areas (1/8,1/4,3/8,1/4) are realized by (1/2,1/4)
        system = build_system(
            cone4, unit_square, AreaAssignment.from_list(cone4, HAND_CONE_AREAS))
        assert system.unknown_count == 2
        point = [Fraction(1, 2), Fraction(1, 4)]
        for p in system.polys:
            assert p.eval_exact(point) == 0

    def test_degrees(self, unit_square, big_square, cone4, two_interior):
        # cone faces have one unknown corner: all linear
        s1 = build_system(cone4, unit_square,
                          AreaAssignment.equal(cone4, unit_square))
        assert s1.degrees() == [1, 1, 1, 1]
        # the face (4,5,6) has two unknown corners: quadratic
        s2 = build_system(two_interior, big_square,
                          AreaAssignment.equal(two_interior, big_square))
        assert sorted(s2.degrees()) == [1, 1, 1, 1, 2, 2]

    def test_constant_faces_and_feasible_report(self, unit_square):
        fan = fan_type(4)
        areas = AreaAssignment.from_list(
            fan, [Fraction(1, 2), Fraction(1, 2)])
        system = build_system(fan, unit_square, areas)
        assert system.unknown_count == 0
        assert system.polys == []
        assert all(r == 0 for _, r in system.constants_report)
        assert system.infeasibility is None

    def test_constant_face_mismatch_reported(self, unit_square):
        fan = fan_type(4)
        areas = AreaAssignment.from_list(
            fan, [Fraction(1, 4), Fraction(3, 4)])
        system = build_system(fan, unit_square, areas)
        residuals = {f: r for f, r in system.constants_report}
        # [TRIVIAL] face (1,2,3) really has area 1/2; residual 1/2 - 1/4
        assert residuals[(1, 2, 3)] == Fraction(1, 4)

    def test_area_sum_mismatch_flags_infeasible(self, unit_square, cone4):
        areas = AreaAssignment.from_list(
            cone4, [Fraction(1, 4)] * 3 + [Fraction(1, 2)])
        system = build_system(cone4, unit_square, areas)
        assert system.infeasibility is not None

    def test_type_polygon_mismatch(self, unit_triangle, cone4):
        with pytest.raises(ValueError):
            build_system(cone4, unit_triangle,
                         AreaAssignment.from_list(cone4, [1, 1, 1, 1]))

    def test_compiled_evaluation_matches_exact(self, big_square, two_interior):
        system = build_system(
            two_interior, big_square,
            AreaAssignment.equal(two_interior, big_square))
        rng = random.Random(5)
        for _ in range(20):
            point = np.array([rng.uniform(-2, 2) + 1j * rng.uniform(-2, 2)
                              for _ in range(4)])
            compiled = system.evaluate(point)
            direct = np.array([p.eval_complex(list(point))
                               for p in system.polys])
            assert np.max(np.abs(compiled - direct)) < 1e-12


class TestJacobian:
    def test_matches_central_finite_differences(self, big_square, two_interior):
        # [DERIVED] finite-difference oracle, step 1e-7, relative 1e-6
        system = build_system(
            two_interior, big_square,
            AreaAssignment.equal(two_interior, big_square))
        rng = random.Random(9)
        h = 1e-7
        for _ in range(10):
            point = np.array([rng.uniform(-2, 2) + 1j * rng.uniform(-2, 2)
                              for _ in range(4)])
            jac = system.jacobian(point)
            for v in range(4):
                step = np.zeros(4, dtype=np.complex128)
                step[v] = h
                fd = (system.evaluate(point + step)
                      - system.evaluate(point - step)) / (2 * h)
                scale = max(1.0, float(np.max(np.abs(jac[:, v]))))
                assert np.max(np.abs(jac[:, v] - fd)) / scale < 1e-6


class TestAreaSumIdentity:
    def test_holds_at_arbitrary_complex_assignments(
            self, unit_square, big_square, pentagon, cone4, cone5, two_interior):
        # the face areas always sum to the polygon area, identically
        rng = random.Random(21)
        cases = [(cone4, unit_square), (two_interior, big_square),
                 (cone5, pentagon)]
        for ctype, polygon in cases:
            expected = complex(polygon.area())
            for _ in range(25):
                assignment = [rng.uniform(-5, 5) + 1j * rng.uniform(-5, 5)
                              for _ in range(2 * ctype.interior_count)]
                total = face_area_sum(ctype, polygon, assignment)
                assert abs(total - expected) / abs(expected) < 1e-10


class TestFaceDeterminant:
    def test_boundary_face_is_constant(self, unit_square):
        fan = fan_type(4)
        det = face_determinant(fan, unit_square, (1, 2, 3))
        assert det.is_constant()
        assert det.constant_value() == 1  # twice the area 1/2

    def test_interior_face_linear_in_unknowns(self, unit_square, cone4):
        det = face_determinant(cone4, unit_square, (1, 2, 5))
        # face (1,2,5) on the unit square: det = 2 * area = y5
        point = [Fraction(3, 7), Fraction(2, 5)]
        assert det.eval_exact(point) == Fraction(2, 5)
