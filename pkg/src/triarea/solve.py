"""End-to-end enumeration of vertex placements for one combinatorial
type with prescribed face areas.

Pipeline: build equations -> square subsystem -> track all paths ->
filter converged endpoints by the leftover equations -> refine on the
full overdetermined system -> deduplicate -> classify real/geometric
solutions and check isolation.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from .combo import CombinatorialType
from .config import Config, DEFAULT_CONFIG
from .geom import (Polygon, Rational2, open_segments_intersect,
                   point_in_polygon_strict, triangle_area_exact)
from .homotopy import (HomotopyProblem, PathResult, Strategy,
                       make_square_subsystem, newton_refine, track_all)
from .poly import AreaAssignment, PolynomialSystem, build_system


@dataclass
class IsolationReport:
    rank: int
    required: int
    singular_values: List[float]

    @property
    def isolated(self) -> bool:
        return self.rank == self.required


@dataclass
class Solution:
    """One refined point of the configuration variety."""

    coordinates: Dict[int, Tuple[complex, complex]]  # interior vertex -> (x, y)
    vector: np.ndarray
    residual: float
    is_real: bool
    is_geometric: bool
    geometric_diagnostics: List[str]
    isolation: IsolationReport

    def real_coordinates(self) -> Dict[int, Tuple[float, float]]:
        return {v: (x.real, y.real) for v, (x, y) in self.coordinates.items()}


@dataclass
class SolutionSet:
    ctype: CombinatorialType
    polygon: Polygon
    areas: AreaAssignment
    system: PolynomialSystem
    solutions: List[Solution]
    divergences: List[PathResult]
    path_counts: Dict[str, int]
    infeasible: bool
    infeasible_reason: Optional[str]
    warnings: List[str] = field(default_factory=list)

    @property
    def geometric_solutions(self) -> List[Solution]:
        return [s for s in self.solutions if s.is_geometric]


def _rationalize(value: float, cap: int) -> Fraction:
    return Fraction(value).limit_denominator(cap)


def check_geometric(ctype: CombinatorialType, polygon: Polygon,
                    coords: Dict[int, Tuple[float, float]],
                    config: Config = DEFAULT_CONFIG) -> Tuple[bool, List[str]]:
    """Decide whether a real solution is an honest triangulation.

    Exact rational predicates on rationalized coordinates: every face
    anticlockwise with positive area, interior vertices strictly inside
    the polygon, no two edges overlapping except at shared endpoints.
    """
    pos: Dict[int, Rational2] = {}
    for k in range(1, ctype.n + 1):
        pos[k] = polygon.vertex(k)
    for v, (x, y) in coords.items():
        pos[v] = (_rationalize(x, config.denominator_cap),
                  _rationalize(y, config.denominator_cap))

    problems: List[str] = []
    for face in ctype.faces:
        area = triangle_area_exact(pos[face[0]], pos[face[1]], pos[face[2]])
        if area <= 0:
            problems.append(f"face {face} has non-positive area {area}")
    for v in ctype.interior_vertices:
        if not point_in_polygon_strict(pos[v], polygon.vertices):
            problems.append(f"interior vertex {v} lies outside the polygon")
    if problems:
        return False, problems

    edges = sorted(tuple(sorted(e)) for e in ctype.edges)
    for i in range(len(edges)):
        a, b = pos[edges[i][0]], pos[edges[i][1]]
        for j in range(i + 1, len(edges)):
            c, d = pos[edges[j][0]], pos[edges[j][1]]
            if open_segments_intersect(a, b, c, d):
                problems.append(f"edges {edges[i]} and {edges[j]} cross")
    return not problems, problems


def isolation_check(system: PolynomialSystem, vector: np.ndarray,
                    config: Config = DEFAULT_CONFIG) -> IsolationReport:
    """Numerical rank of the full-system Jacobian at a refined solution.

    Full column rank (= 2i) witnesses an isolated point of the variety.
    """
    nunk = system.unknown_count
    if nunk == 0:
        return IsolationReport(rank=0, required=0, singular_values=[])
    jac = system.jacobian(np.asarray(vector, dtype=np.complex128))
    svals = np.linalg.svd(jac, compute_uv=False)
    cutoff = config.isolation_rank_threshold * (svals[0] if len(svals) else 0.0)
    rank = int(np.sum(svals > cutoff))
    return IsolationReport(rank=rank, required=nunk,
                           singular_values=[float(s) for s in svals])


def _vector_to_coords(system: PolynomialSystem,
                      vector: np.ndarray) -> Dict[int, Tuple[complex, complex]]:
    out = {}
    for v in system.ctype.interior_vertices:
        out[v] = (complex(vector[system.var_index(v, 0)]),
                  complex(vector[system.var_index(v, 1)]))
    return out


def _make_solution(system: PolynomialSystem, vector: np.ndarray,
                   residual: float, config: Config) -> Solution:
    coords = _vector_to_coords(system, vector)
    is_real = all(abs(x.imag) < config.real_tol and abs(y.imag) < config.real_tol
                  for x, y in coords.values())
    if is_real:
        real_coords = {v: (x.real, y.real) for v, (x, y) in coords.items()}
        geometric, diagnostics = check_geometric(
            system.ctype, system.polygon, real_coords, config)
    else:
        geometric, diagnostics = False, ["solution is not real"]
    return Solution(
        coordinates=coords,
        vector=vector,
        residual=residual,
        is_real=is_real,
        is_geometric=geometric,
        geometric_diagnostics=diagnostics,
        isolation=isolation_check(system, vector, config),
    )


def solve(ctype: CombinatorialType, polygon: Polygon, areas: AreaAssignment,
          config: Config = DEFAULT_CONFIG,
          strategy: Strategy = "greedy") -> SolutionSet:
    """Find all placements of the interior vertices realizing the
    prescribed areas, plus diagnostics for divergent paths."""
    system = build_system(ctype, polygon, areas)
    warnings: List[str] = []
    infeasible = False
    reason = None

    if system.infeasibility:
        infeasible = True
        reason = system.infeasibility
    bad_constants = [(f, r) for f, r in system.constants_report if r != 0]
    if bad_constants:
        infeasible = True
        face, r = bad_constants[0]
        reason = reason or f"all-boundary face {face} has residual {r}"

    if system.unknown_count == 0:
        solutions: List[Solution] = []
        if not infeasible:
            solutions.append(Solution(
                coordinates={}, vector=np.zeros(0, dtype=np.complex128),
                residual=0.0, is_real=True, is_geometric=True,
                geometric_diagnostics=[],
                isolation=IsolationReport(rank=0, required=0, singular_values=[]),
            ))
        return SolutionSet(
            ctype=ctype, polygon=polygon, areas=areas, system=system,
            solutions=solutions, divergences=[],
            path_counts={"total": 0, "converged": 0, "diverged": 0, "failed": 0},
            infeasible=infeasible, infeasible_reason=reason, warnings=warnings)

    square, leftover = make_square_subsystem(system, strategy)
    problem = HomotopyProblem.from_square(square, config.seed)
    paths = track_all(problem, config)

    counts = {"total": len(paths), "converged": 0, "diverged": 0, "failed": 0}
    for p in paths:
        counts[p.status] += 1
    if counts["failed"]:
        warnings.append(f"{counts['failed']} path(s) failed")

    candidates: List[Tuple[np.ndarray, float]] = []
    for p in paths:
        if not p.converged:
            continue
        if leftover.polys:
            leftover_res = float(np.max(np.abs(leftover.evaluate(p.endpoint))))
            if leftover_res > config.filter_tol:
                continue
        x, res, ok = newton_refine(system, p.endpoint, tol=config.newton_tol)
        if not ok and res > config.full_residual_tol:
            warnings.append(
                f"refinement stalled at residual {res:.3e} (possible multiple root)")
            continue
        if res > config.full_residual_tol:
            continue
        candidates.append((x, res))

    deduped: List[Tuple[np.ndarray, float]] = []
    for x, res in candidates:
        if any(np.max(np.abs(x - y)) < config.dedup_tol for y, _ in deduped):
            continue
        deduped.append((x, res))

    solutions = [_make_solution(system, x, res, config) for x, res in deduped]
    divergences = [p for p in paths if p.diverged]
    return SolutionSet(
        ctype=ctype, polygon=polygon, areas=areas, system=system,
        solutions=solutions, divergences=divergences, path_counts=counts,
        infeasible=infeasible, infeasible_reason=reason, warnings=warnings)


# ---------------------------------------------------------------------------
# independent round-trip oracle
# ---------------------------------------------------------------------------

@dataclass
class RoundtripReport:
    sample: Dict[int, Rational2]
    areas: AreaAssignment
    solution_set: SolutionSet
    recovered: bool
    recovered_geometric: bool
    match_error: float


class SamplingError(RuntimeError):
    """Rejection sampling failed to find a geometric configuration."""


def sample_geometric_configuration(
        ctype: CombinatorialType, polygon: Polygon, seed: int,
        denominator: int = 64, max_tries: int = 20_000,
        config: Config = DEFAULT_CONFIG) -> Dict[int, Rational2]:
    """Random rational interior points realizing the type geometrically,
    by rejection sampling inside the polygon's bounding box."""
    rng = random.Random(seed)
    xs = [v[0] for v in polygon.vertices]
    ys = [v[1] for v in polygon.vertices]
    lox, hix = min(xs), max(xs)
    loy, hiy = min(ys), max(ys)
    span = denominator
    for _ in range(max_tries):
        coords: Dict[int, Rational2] = {}
        for v in ctype.interior_vertices:
            fx = lox + (hix - lox) * Fraction(rng.randrange(1, span), span)
            fy = loy + (hiy - loy) * Fraction(rng.randrange(1, span), span)
            coords[v] = (fx, fy)
        ok, _ = _exact_geometric(ctype, polygon, coords)
        if ok:
            return coords
    raise SamplingError(
        f"no geometric configuration found in {max_tries} tries (seed {seed})")


def _exact_geometric(ctype: CombinatorialType, polygon: Polygon,
                     coords: Dict[int, Rational2]) -> Tuple[bool, List[str]]:
    pos: Dict[int, Rational2] = {k: polygon.vertex(k)
                                 for k in range(1, ctype.n + 1)}
    pos.update(coords)
    for face in ctype.faces:
        if triangle_area_exact(pos[face[0]], pos[face[1]], pos[face[2]]) <= 0:
            return False, [f"face {face} non-positive"]
    for v in ctype.interior_vertices:
        if not point_in_polygon_strict(pos[v], polygon.vertices):
            return False, [f"vertex {v} outside"]
    edges = sorted(tuple(sorted(e)) for e in ctype.edges)
    for i in range(len(edges)):
        a, b = pos[edges[i][0]], pos[edges[i][1]]
        for j in range(i + 1, len(edges)):
            c, d = pos[edges[j][0]], pos[edges[j][1]]
            if open_segments_intersect(a, b, c, d):
                return False, [f"edges {edges[i]}/{edges[j]} cross"]
    return True, []


def induced_areas(ctype: CombinatorialType, polygon: Polygon,
                  coords: Dict[int, Rational2]) -> AreaAssignment:
    """Exact face areas induced by a rational configuration."""
    pos: Dict[int, Rational2] = {k: polygon.vertex(k)
                                 for k in range(1, ctype.n + 1)}
    pos.update(coords)
    return AreaAssignment({
        face: triangle_area_exact(pos[face[0]], pos[face[1]], pos[face[2]])
        for face in ctype.faces})


def roundtrip_oracle(ctype: CombinatorialType, polygon: Polygon, seed: int,
                     config: Config = DEFAULT_CONFIG,
                     tol: float = 1e-9) -> RoundtripReport:
    """Sample a rational configuration, rebuild its areas, solve, and
    confirm the sample reappears among the solutions."""
    sample = sample_geometric_configuration(ctype, polygon, seed, config=config)
    areas = induced_areas(ctype, polygon, sample)
    sset = solve(ctype, polygon, areas, config)

    target = np.zeros(sset.system.unknown_count, dtype=np.complex128)
    for v, (fx, fy) in sample.items():
        target[sset.system.var_index(v, 0)] = float(fx)
        target[sset.system.var_index(v, 1)] = float(fy)

    best = float("inf")
    best_sol: Optional[Solution] = None
    for sol in sset.solutions:
        err = float(np.max(np.abs(sol.vector - target)))
        if err < best:
            best = err
            best_sol = sol
    recovered = best < tol
    return RoundtripReport(
        sample=sample, areas=areas, solution_set=sset,
        recovered=recovered,
        recovered_geometric=recovered and best_sol is not None
        and best_sol.is_geometric,
        match_error=best,
    )
