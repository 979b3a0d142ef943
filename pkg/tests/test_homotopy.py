"""Square-subsystem selection and total-degree path tracking."""

import numpy as np
import pytest

from triarea import (AreaAssignment, DEFAULT_CONFIG, HomotopyProblem,
                     build_system, make_square_subsystem, newton_refine,
                     track_all)

from conftest import HAND_CONE_AREAS


def _cone_system(unit_square, cone4, areas=None):
    assignment = (AreaAssignment.from_list(cone4, areas)
                  if areas is not None
                  else AreaAssignment.equal(cone4, unit_square))
    return build_system(cone4, unit_square, assignment)


def _two_system(big_square, two_interior):
    return build_system(two_interior, big_square,
                        AreaAssignment.equal(two_interior, big_square))


class TestSquareSelection:
    def test_greedy_covers_all_unknowns(self, big_square, two_interior):
        system = _two_system(big_square, two_interior)
        square, leftover = make_square_subsystem(system)
        assert len(square.polys) == system.unknown_count == 4
        assert len(leftover.polys) == 2
        covered = set()
        for p in square.polys:
            covered.update(p.variables_used())
        assert covered == {0, 1, 2, 3}

    def test_greedy_prefers_low_degree(self, big_square, two_interior):
        system = _two_system(big_square, two_interior)
        square, _ = make_square_subsystem(system)
        # the linear equations only touch x5, y5 and y6, so exactly one
        # quadratic is needed to cover x6 -- never two
        assert sorted(square.degrees()) == [1, 1, 1, 2]

    def test_explicit_selection(self, unit_square, cone4):
        system = _cone_system(unit_square, cone4)
        square, leftover = make_square_subsystem(system, [0, 2])
        assert square.poly_faces == [system.poly_faces[0], system.poly_faces[2]]
        assert len(leftover.polys) == 2

    def test_explicit_selection_wrong_size(self, unit_square, cone4):
        system = _cone_system(unit_square, cone4)
        with pytest.raises(ValueError):
            make_square_subsystem(system, [0])
        with pytest.raises(ValueError):
            make_square_subsystem(system, [0, 99])

    def test_no_unknowns_rejected(self, unit_square):
        from triarea import fan_type
        fan = fan_type(4)
        system = build_system(
            fan, unit_square, AreaAssignment.equal(fan, unit_square))
        with pytest.raises(ValueError):
            make_square_subsystem(system)


class TestHomotopyProblem:
    def test_path_count_is_degree_product(self, big_square, two_interior):
        system = _two_system(big_square, two_interior)
        square, _ = make_square_subsystem(system, [0, 1, 4, 5])
        problem = HomotopyProblem.from_square(square, 0)
        assert problem.path_count == 1 * 1 * 2 * 2
        assert len(problem.start_roots()) == 4

    def test_start_roots_solve_start_system(self, big_square, two_interior):
        system = _two_system(big_square, two_interior)
        square, _ = make_square_subsystem(system, [0, 1, 4, 5])
        problem = HomotopyProblem.from_square(square, 0)
        for root in problem.start_roots():
            for j, d in enumerate(problem.degrees):
                assert abs(root[j] ** d - 1) < 1e-12

    def test_gamma_unit_modulus_and_seeded(self, unit_square, cone4):
        system = _cone_system(unit_square, cone4)
        square, _ = make_square_subsystem(system)
        p0 = HomotopyProblem.from_square(square, 0)
        p0b = HomotopyProblem.from_square(square, 0)
        p1 = HomotopyProblem.from_square(square, 1)
        assert abs(abs(p0.gamma) - 1) < 1e-12
        assert p0.gamma == p0b.gamma
        assert p0.gamma != p1.gamma

    def test_non_square_rejected(self, big_square, two_interior):
        system = _two_system(big_square, two_interior)
        with pytest.raises(ValueError):
            HomotopyProblem(target=system, degrees=(1,) * 6,
                            gamma=1j, seed=0)


class TestTracking:
    def test_path_conservation(self, big_square, two_interior):
        system = _two_system(big_square, two_interior)
        square, _ = make_square_subsystem(system)
        for seed in range(5):
            problem = HomotopyProblem.from_square(square, seed)
            paths = track_all(problem)
            assert len(paths) == problem.path_count
            assert all(p.status in ("converged", "diverged", "failed")
                       for p in paths)

    def test_deterministic_for_fixed_seed(self, big_square, two_interior):
        system = _two_system(big_square, two_interior)
        square, _ = make_square_subsystem(system)
        problem = HomotopyProblem.from_square(square, 3)
        a = track_all(problem)
        b = track_all(problem)
        for pa, pb in zip(a, b):
            assert pa.status == pb.status
            assert np.array_equal(pa.endpoint, pb.endpoint)

    def test_converged_endpoint_solves_square_system(self, unit_square, cone4):
        system = _cone_system(unit_square, cone4, HAND_CONE_AREAS)
        square, _ = make_square_subsystem(system)
        problem = HomotopyProblem.from_square(square, 0)
        [path] = track_all(problem)
        assert path.converged
        assert path.t_final == 0.0
        res = np.max(np.abs(square.evaluate(path.endpoint)))
        assert res < DEFAULT_CONFIG.converged_residual

    def test_projective_limits_finite_for_converged(self, unit_square, cone4):
        system = _cone_system(unit_square, cone4, HAND_CONE_AREAS)
        square, _ = make_square_subsystem(system)
        [path] = track_all(HomotopyProblem.from_square(square, 0))
        assert not path.projective_limits[5].at_infinity()


class TestNewtonRefine:
    def test_refines_to_full_system_root(self, unit_square, cone4):
        system = _cone_system(unit_square, cone4, HAND_CONE_AREAS)
        x0 = np.array([0.5 + 1e-6, 0.25 - 1e-6], dtype=np.complex128)
        x, res, ok = newton_refine(system, x0)
        assert ok
        assert res < 1e-12
        assert abs(x[0] - 0.5) < 1e-12
        assert abs(x[1] - 0.25) < 1e-12

    def test_overdetermined_least_squares_path(self, big_square, two_interior):
        system = _two_system(big_square, two_interior)
        # equal areas on this type have no solution; refinement from an
        # arbitrary point must not blow up and reports its residual
        x0 = np.array([1.0, 1.0, 1.2, 0.8], dtype=np.complex128)
        x, res, ok = newton_refine(system, x0, max_iter=10)
        assert np.all(np.isfinite(x))
        assert res >= 0
