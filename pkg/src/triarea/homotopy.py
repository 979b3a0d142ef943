"""Total-degree homotopy continuation over a square subsystem.

The face equations are overdetermined (n - 2 + 2i equations in 2i
unknowns), so a square subsystem is selected first; the remaining
equations become post-hoc filters.  Start system: x_j^{d_j} - 1 = 0
with a random unit-modulus gamma multiplier to keep paths disjoint for
almost every seed.
"""

from __future__ import annotations

import cmath
import itertools
import math
import random
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple, Union

import numpy as np

from . import kernels
from .config import Config, DEFAULT_CONFIG
from .geom import ProjectivePoint
from .poly import PolynomialSystem

Strategy = Union[str, Sequence[int]]

_STATUS_NAMES = {
    kernels.CONVERGED: "converged",
    kernels.DIVERGED: "diverged",
    kernels.FAILED: "failed",
}


class SquareSelectionError(RuntimeError):
    """No equation selection covers every unknown."""


def make_square_subsystem(system: PolynomialSystem,
                          strategy: Strategy = "greedy"
                          ) -> Tuple[PolynomialSystem, PolynomialSystem]:
    """Pick 2i equations covering all unknowns; return (square, leftover).

    The greedy strategy processes equations by (degree, index) and keeps
    one per unknown via bipartite augmenting paths, so low-degree
    equations are preferred and the selected Jacobian has full
    structural rank.  An explicit index list may be passed instead.
    """
    nunk = system.unknown_count
    if nunk < 1:
        raise ValueError("square subsystem needs at least one unknown")
    neq = len(system.polys)

    if not isinstance(strategy, str):
        indices = list(strategy)
        if len(indices) != nunk:
            raise ValueError(
                f"explicit selection has {len(indices)} equations, need {nunk}"
            )
        if any(i < 0 or i >= neq for i in indices):
            raise ValueError("explicit selection index out of range")
    elif strategy == "greedy":
        indices = _greedy_matching_selection(system)
    else:
        raise ValueError(f"unknown strategy {strategy!r}")

    leftover = [i for i in range(neq) if i not in set(indices)]
    return system.subsystem(indices), system.subsystem(leftover)


def _greedy_matching_selection(system: PolynomialSystem) -> List[int]:
    nunk = system.unknown_count
    uses = [p.variables_used() for p in system.polys]
    order = sorted(range(len(system.polys)),
                   key=lambda i: (system.polys[i].total_degree(), i))
    match_of_var: Dict[int, int] = {}

    def try_augment(eq: int, seen: set) -> bool:
        for v in uses[eq]:
            if v in seen:
                continue
            seen.add(v)
            if v not in match_of_var or try_augment(match_of_var[v], seen):
                match_of_var[v] = eq
                return True
        return False

    selected: List[int] = []
    for eq in order:
        if len(selected) == nunk:
            break
        if try_augment(eq, set()):
            selected.append(eq)
    if len(selected) != nunk:
        raise SquareSelectionError(
            f"only {len(selected)} of {nunk} unknowns coverable by equations"
        )
    return sorted(selected)


@dataclass(frozen=True)
class HomotopyProblem:
    """Square target system plus start-system data."""

    target: PolynomialSystem
    degrees: Tuple[int, ...]
    gamma: complex
    seed: int

    def __post_init__(self):
        if len(self.target.polys) != self.target.unknown_count:
            raise ValueError("target system is not square")
        if any(d < 1 for d in self.degrees):
            raise ValueError("start-system degrees must be >= 1")

    @property
    def path_count(self) -> int:
        return math.prod(self.degrees)

    @classmethod
    def from_square(cls, square: PolynomialSystem, seed: int) -> "HomotopyProblem":
        rng = random.Random(seed)
        gamma = cmath.exp(2j * math.pi * rng.random())
        degrees = tuple(max(1, p.total_degree()) for p in square.polys)
        return cls(target=square, degrees=degrees, gamma=gamma, seed=seed)

    def start_roots(self) -> List[np.ndarray]:
        """All ∏ d_j roots of the start system g_j = x_j^{d_j} - 1."""
        axes = []
        for d in self.degrees:
            axes.append([cmath.exp(2j * math.pi * k / d) for k in range(d)])
        return [np.array(combo, dtype=np.complex128)
                for combo in itertools.product(*axes)]


@dataclass
class PathResult:
    """Endpoint of one tracked homotopy path."""

    start_index: int
    start_root: np.ndarray
    status: str  # converged | diverged | failed
    endpoint: np.ndarray  # final point (converged) or last finite sample
    t_final: float
    newton_residual: float
    projective_limits: Dict[int, ProjectivePoint]  # per interior vertex

    @property
    def converged(self) -> bool:
        return self.status == "converged"

    @property
    def diverged(self) -> bool:
        return self.status == "diverged"


def _projective_limits(system: PolynomialSystem,
                       sample: np.ndarray) -> Dict[int, ProjectivePoint]:
    limits: Dict[int, ProjectivePoint] = {}
    for v in system.ctype.interior_vertices:
        x = complex(sample[system.var_index(v, 0)])
        y = complex(sample[system.var_index(v, 1)])
        limits[v] = ProjectivePoint(x, y, 1.0 + 0j).canonicalize()
    return limits


def track_all(problem: HomotopyProblem,
              config: Config = DEFAULT_CONFIG) -> List[PathResult]:
    """Track every start root to t=0; each path lands in exactly one of
    converged / diverged / failed."""
    square = problem.target
    coeffs, exps, offsets = square.compiled()
    degrees = np.asarray(problem.degrees, dtype=np.int64)
    results: List[PathResult] = []
    for idx, x0 in enumerate(problem.start_roots()):
        status_code, x, t_final, res = kernels.track_path(
            coeffs, exps, offsets, degrees, problem.gamma, x0,
            config.dt_initial, config.dt_max, config.dt_min,
            config.truncation_magnitude, config.corrector_tol,
            config.newton_tol, config.converged_residual,
        )
        status = _STATUS_NAMES[int(status_code)]
        results.append(PathResult(
            start_index=idx,
            start_root=x0,
            status=status,
            endpoint=np.asarray(x),
            t_final=float(t_final),
            newton_residual=float(res),
            projective_limits=_projective_limits(square, np.asarray(x)),
        ))
    return results


def newton_refine(system: PolynomialSystem, x0: np.ndarray,
                  max_iter: int = 50,
                  tol: float = 1e-12) -> Tuple[np.ndarray, float, bool]:
    """Refine a root of a square or overdetermined system.

    Square systems use plain Newton; overdetermined ones take the
    least-squares Gauss-Newton step.  Returns (x, residual_norm, ok);
    ok is False on a singular or rank-deficient Jacobian, the numeric
    symptom of a non-isolated or multiple root.
    """
    x = np.asarray(x0, dtype=np.complex128).copy()
    neq = len(system.polys)
    nunk = system.unknown_count
    res = float(np.max(np.abs(system.evaluate(x)))) if neq else 0.0
    if neq == 0:
        return x, 0.0, True
    for _ in range(max_iter):
        if res < tol:
            return x, res, True
        jac = system.jacobian(x)
        f = system.evaluate(x)
        if neq == nunk:
            dx, ok = kernels.solve_linear(jac, -f)
            if not ok:
                return x, res, False
        else:
            dx, _, rank, _ = np.linalg.lstsq(jac, -f, rcond=1e-12)
            if rank < nunk:
                return x, res, False
        x = x + dx
        new_res = float(np.max(np.abs(system.evaluate(x))))
        res = new_res
    return x, res, res < tol
