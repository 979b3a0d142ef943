"""Exact elimination and algebraicity certificates."""

from fractions import Fraction

import pytest

from triarea import (AreaAssignment, build_system, certify, cone_type,
                     eliminate, solve, sylvester_resultant, to_integer_coeffs)
from triarea.exact import (EliminationError, _uni_gcd, _uni_squarefree,
                           _uni_trim)
from triarea.poly import SparsePoly
from triarea.solve import induced_areas, sample_geometric_configuration

from conftest import HAND_CONE_AREAS


def F(*vals):
    return [Fraction(v) for v in vals]


class TestUnivariateHelpers:
    def test_gcd_of_shared_factor(self):
        # [DERIVED] (t-1)(t-2) and (t-1)(t+3) share t-1
        a = F(2, -3, 1)       # t^2 - 3t + 2
        b = F(-3, 2, 1)       # t^2 + 2t - 3
        g = _uni_gcd(a, b)
        assert g == F(-1, 1)  # monic t - 1

    def test_gcd_coprime_is_constant(self):
        g = _uni_gcd(F(-1, 1), F(1, 1))
        assert len(g) == 1

    def test_squarefree_drops_multiplicity(self):
        # [DERIVED] (t-1)^2 (t+2) = t^3 - 3t + 2
        p = F(2, -3, 0, 1)
        sf = _uni_trim(_uni_squarefree(p))
        # squarefree part (t-1)(t+2) = t^2 + t - 2, up to scaling
        lead = sf[-1]
        assert [c / lead for c in sf] == F(-2, 1, 1)

    def test_to_integer_coeffs_normalization(self):
        assert to_integer_coeffs(F("1/2", "3/2")) == [1, 3]
        assert to_integer_coeffs(F(-2, -4)) == [1, 2]  # positive leading
        assert to_integer_coeffs(F(6, 12, 18)) == [1, 2, 3]
        assert to_integer_coeffs([]) == []


class TestSylvesterResultant:
    def test_circle_and_line(self):
        # [DERIVED] res_x(x^2 + y^2 - 1, x - y) = 2y^2 - 1
        x = SparsePoly.variable(2, 0)
        y = SparsePoly.variable(2, 1)
        circle = x * x + y * y - SparsePoly.constant(2, 1)
        line = x - y
        res = sylvester_resultant(circle, line, 0)
        # check it vanishes exactly at y = 1/sqrt(2) ~ the common roots:
        # substitute rationally: res(y) must equal c*(2y^2 - 1)
        vals = {Fraction(0): res.eval_exact([Fraction(0), Fraction(0)]),
                Fraction(1): res.eval_exact([Fraction(0), Fraction(1)])}
        ratio0 = vals[Fraction(0)] / Fraction(-1)   # 2*0^2-1 = -1
        ratio1 = vals[Fraction(1)] / Fraction(1)    # 2*1^2-1 = 1
        assert ratio0 == ratio1 != 0

    def test_constant_in_variable_power_rule(self):
        # res_x(c, q) = c^deg_x(q)
        x = SparsePoly.variable(2, 0)
        y = SparsePoly.variable(2, 1)
        c = y + SparsePoly.constant(2, 2)
        q = x * x - y
        res = sylvester_resultant(c, q, 0)
        assert res == c * c

    def test_no_dependence_raises(self):
        y = SparsePoly.variable(2, 1)
        with pytest.raises(ValueError):
            sylvester_resultant(y, y + y, 0)


class TestEliminate:
    def test_toy_system(self):
        # [DERIVED] {x^2 - 2, y - x}: y satisfies y^2 - 2
        x = SparsePoly.variable(2, 0)
        y = SparsePoly.variable(2, 1)
        system = [x * x - SparsePoly.constant(2, 2), y - x]
        assert eliminate(system, keep=1) == [-2, 0, 1]
        assert eliminate(system, keep=0) == [-2, 0, 1]

    def test_empty_raises(self):
        with pytest.raises(EliminationError):
            eliminate([SparsePoly(2)], keep=0)

    def test_variable_cap(self):
        p = SparsePoly.variable(6, 0)
        with pytest.raises(EliminationError, match="cap"):
            eliminate([p], keep=0)


class TestHandCertificates:
    def test_square_cone_asymmetric(self, unit_square, cone4):
        # [DERIVED] hand elimination: 2*x5 - 1 and 4*y5 - 1
        sset = solve(cone4, unit_square,
                     AreaAssignment.from_list(cone4, HAND_CONE_AREAS))
        [cert] = certify(sset)
        by_var = {c.variable: c for c in cert.coordinates}
        assert by_var["x5"].polynomial == [-1, 2]
        assert by_var["y5"].polynomial == [-1, 4]
        assert cert.all_matched

    def test_triangle_cone_equal(self, unit_triangle, cone3):
        # [DERIVED] centroid: 3*t - 1 for both coordinates
        sset = solve(cone3, unit_triangle,
                     AreaAssignment.equal(cone3, unit_triangle))
        [cert] = certify(sset)
        for c in cert.coordinates:
            assert c.polynomial == [-1, 3]
            assert c.matched
            assert c.residual <= max(c.residual_bound, 1e-12)


class TestExactAnnihilation:
    @pytest.mark.parametrize("seed", range(3))
    def test_roundtrip_solutions_annihilated_exactly(
            self, big_square, two_interior, seed):
        """The integer certificate evaluates to exactly zero at the
        known rational coordinates of the planted solution."""
        sample = sample_geometric_configuration(two_interior, big_square, seed)
        areas = induced_areas(two_interior, big_square, sample)
        sset = solve(two_interior, big_square, areas)
        certificates = certify(sset)
        # locate the planted solution
        system = sset.system
        best, best_err = None, float("inf")
        for sol, cert in zip(sset.solutions, certificates):
            err = max(
                abs(sol.vector[system.var_index(v, c)] - complex(val[c]))
                for v, val in sample.items() for c in (0, 1))
            if err < best_err:
                best, best_err = cert, err
        assert best_err < 1e-9
        exact_by_var = {}
        for v, (fx, fy) in sample.items():
            exact_by_var[f"x{v}"] = fx
            exact_by_var[f"y{v}"] = fy
        for coord in best.coordinates:
            assert coord.polynomial, "certificate polynomial is empty"
            value = coord.evaluate_exact(exact_by_var[coord.variable])
            assert value == 0
            assert coord.matched

    def test_cone_certificates_linear(self, unit_square, cone4):
        # linear systems give degree-1 annihilators with the exact root
        sample = sample_geometric_configuration(cone4, unit_square, 7)
        areas = induced_areas(cone4, unit_square, sample)
        sset = solve(cone4, unit_square, areas)
        [cert] = certify(sset)
        (fx, fy) = sample[5]
        by_var = {c.variable: c for c in cert.coordinates}
        assert by_var["x5"].evaluate_exact(fx) == 0
        assert by_var["y5"].evaluate_exact(fy) == 0
