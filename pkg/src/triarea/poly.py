"""Area equations of a fixed combinatorial type in the affine chart.

For each anticlockwise face (i, j, k) the defining equation is

    det[[x_i, x_j, x_k], [y_i, y_j, y_k], [1, 1, 1]] - 2 S_ijk = 0

with boundary coordinates substituted as rational constants and the
interior coordinates left as unknowns, ordered
(x_{n+1}, y_{n+1}, ..., x_N, y_N).  Coefficients are exact rationals;
a compiled complex-double form backs the numeric solver.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from .combo import CombinatorialType, Face, _normalize_face
from .geom import Polygon
from . import kernels

Exponents = Tuple[int, ...]


class SparsePoly:
    """Sparse multivariate polynomial with Fraction coefficients."""

    __slots__ = ("nvars", "terms")

    def __init__(self, nvars: int, terms: Optional[Dict[Exponents, Fraction]] = None):
        self.nvars = nvars
        self.terms: Dict[Exponents, Fraction] = {}
        if terms:
            for exp, coeff in terms.items():
                c = Fraction(coeff)
                if c != 0:
                    self.terms[tuple(exp)] = c

    @classmethod
    def constant(cls, nvars: int, value) -> "SparsePoly":
        return cls(nvars, {(0,) * nvars: Fraction(value)})

    @classmethod
    def variable(cls, nvars: int, index: int) -> "SparsePoly":
        exp = [0] * nvars
        exp[index] = 1
        return cls(nvars, {tuple(exp): Fraction(1)})

    def __add__(self, other: "SparsePoly") -> "SparsePoly":
        terms = dict(self.terms)
        for exp, c in other.terms.items():
            terms[exp] = terms.get(exp, Fraction(0)) + c
        return SparsePoly(self.nvars, terms)

    def __sub__(self, other: "SparsePoly") -> "SparsePoly":
        terms = dict(self.terms)
        for exp, c in other.terms.items():
            terms[exp] = terms.get(exp, Fraction(0)) - c
        return SparsePoly(self.nvars, terms)

    def __neg__(self) -> "SparsePoly":
        return SparsePoly(self.nvars, {e: -c for e, c in self.terms.items()})

    def __mul__(self, other: "SparsePoly") -> "SparsePoly":
        terms: Dict[Exponents, Fraction] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                terms[e] = terms.get(e, Fraction(0)) + c1 * c2
        return SparsePoly(self.nvars, terms)

    def scale(self, k) -> "SparsePoly":
        k = Fraction(k)
        return SparsePoly(self.nvars, {e: c * k for e, c in self.terms.items()})

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return all(sum(e) == 0 for e in self.terms)

    def constant_value(self) -> Fraction:
        return self.terms.get((0,) * self.nvars, Fraction(0))

    def total_degree(self) -> int:
        if not self.terms:
            return 0
        return max(sum(e) for e in self.terms)

    def degree_in(self, var: int) -> int:
        if not self.terms:
            return 0
        return max((e[var] for e in self.terms), default=0)

    def variables_used(self) -> Tuple[int, ...]:
        used = set()
        for e in self.terms:
            for v, p in enumerate(e):
                if p:
                    used.add(v)
        return tuple(sorted(used))

    def diff(self, var: int) -> "SparsePoly":
        terms: Dict[Exponents, Fraction] = {}
        for e, c in self.terms.items():
            if e[var] == 0:
                continue
            ne = list(e)
            ne[var] -= 1
            terms[tuple(ne)] = terms.get(tuple(ne), Fraction(0)) + c * e[var]
        return SparsePoly(self.nvars, terms)

    def eval_exact(self, point: Sequence[Fraction]) -> Fraction:
        total = Fraction(0)
        for e, c in self.terms.items():
            val = c
            for v, p in zip(point, e):
                for _ in range(p):
                    val *= v
            total += val
        return total

    def eval_complex(self, point: Sequence[complex]) -> complex:
        total = 0j
        for e, c in self.terms.items():
            val = complex(c)
            for v, p in zip(point, e):
                val *= v ** p
            total += val
        return total

    def __eq__(self, other) -> bool:
        return isinstance(other, SparsePoly) and self.terms == other.terms

    def __hash__(self):
        return hash((self.nvars, tuple(sorted(self.terms.items()))))

    def __repr__(self):
        if not self.terms:
            return "0"
        bits = []
        for e, c in sorted(self.terms.items()):
            mono = "*".join(f"v{i}^{p}" if p > 1 else f"v{i}"
                            for i, p in enumerate(e) if p)
            bits.append(f"{c}" + (f"*{mono}" if mono else ""))
        return " + ".join(bits)


@dataclass(frozen=True)
class AreaAssignment:
    """One prescribed signed area per face (anticlockwise positive)."""

    areas: Dict[Face, Fraction]

    def __post_init__(self):
        object.__setattr__(
            self,
            "areas",
            {_normalize_face(f): Fraction(a) for f, a in self.areas.items()},
        )

    def area_of(self, face: Face) -> Fraction:
        key = _normalize_face(face)
        if key not in self.areas:
            raise KeyError(f"no area prescribed for face {key}")
        return self.areas[key]

    def total(self) -> Fraction:
        return sum(self.areas.values(), Fraction(0))

    @classmethod
    def from_list(cls, ctype: CombinatorialType, values: Sequence) -> "AreaAssignment":
        if len(values) != len(ctype.faces):
            raise ValueError(
                f"{len(values)} areas for {len(ctype.faces)} faces"
            )
        return cls({f: Fraction(v) for f, v in zip(ctype.faces, values)})

    @classmethod
    def equal(cls, ctype: CombinatorialType, polygon: Polygon) -> "AreaAssignment":
        share = polygon.area() / len(ctype.faces)
        return cls({f: share for f in ctype.faces})


@dataclass
class PolynomialSystem:
    """Affine-chart equations of the configuration variety for one type."""

    ctype: CombinatorialType
    polygon: Polygon
    areas: AreaAssignment
    polys: List[SparsePoly]
    poly_faces: List[Face]
    constants_report: List[Tuple[Face, Fraction]]
    infeasibility: Optional[str] = None
    _compiled: Optional[tuple] = field(default=None, repr=False)

    @property
    def unknown_count(self) -> int:
        return 2 * self.ctype.interior_count

    def variable_names(self) -> List[str]:
        names = []
        for v in self.ctype.interior_vertices:
            names += [f"x{v}", f"y{v}"]
        return names

    def var_index(self, vertex: int, coord: int) -> int:
        """Unknown-vector index of coordinate `coord` (0=x, 1=y) of an
        interior vertex."""
        return 2 * (vertex - self.ctype.n - 1) + coord

    def compiled(self):
        if self._compiled is None:
            self._compiled = compile_polys(self.polys, self.unknown_count)
        return self._compiled

    def evaluate(self, point: np.ndarray) -> np.ndarray:
        point = np.asarray(point, dtype=np.complex128)
        if point.shape != (self.unknown_count,):
            raise ValueError(
                f"point has shape {point.shape}, expected ({self.unknown_count},)"
            )
        coeffs, exps, offsets = self.compiled()
        return kernels.eval_system(coeffs, exps, offsets, point)

    def jacobian(self, point: np.ndarray) -> np.ndarray:
        point = np.asarray(point, dtype=np.complex128)
        if point.shape != (self.unknown_count,):
            raise ValueError(
                f"point has shape {point.shape}, expected ({self.unknown_count},)"
            )
        coeffs, exps, offsets = self.compiled()
        return kernels.eval_jacobian(coeffs, exps, offsets, point)

    def degrees(self) -> List[int]:
        return [p.total_degree() for p in self.polys]

    def subsystem(self, indices: Sequence[int]) -> "PolynomialSystem":
        return PolynomialSystem(
            ctype=self.ctype,
            polygon=self.polygon,
            areas=self.areas,
            polys=[self.polys[i] for i in indices],
            poly_faces=[self.poly_faces[i] for i in indices],
            constants_report=[],
            infeasibility=self.infeasibility,
        )


def compile_polys(polys: Sequence[SparsePoly], nvars: int):
    """Flatten polynomials into (coeffs, exponent matrix, offsets) arrays
    for the numeric kernels."""
    coeffs: List[complex] = []
    exps: List[Exponents] = []
    offsets = [0]
    for p in polys:
        for e, c in sorted(p.terms.items()):
            coeffs.append(complex(c))
            exps.append(e)
        offsets.append(len(coeffs))
    coeff_arr = np.asarray(coeffs, dtype=np.complex128)
    if exps:
        exp_arr = np.asarray(exps, dtype=np.int64)
    else:
        exp_arr = np.zeros((0, nvars), dtype=np.int64)
    if exp_arr.shape[1] != nvars and exp_arr.size:
        raise ValueError("exponent width mismatch")
    return coeff_arr, exp_arr, np.asarray(offsets, dtype=np.int64)


def _coordinate_polys(ctype: CombinatorialType, polygon: Polygon,
                      vertex: int) -> Tuple[SparsePoly, SparsePoly]:
    nvars = 2 * ctype.interior_count
    if vertex <= ctype.n:
        vx, vy = polygon.vertex(vertex)
        return (SparsePoly.constant(nvars, vx), SparsePoly.constant(nvars, vy))
    base = 2 * (vertex - ctype.n - 1)
    return (SparsePoly.variable(nvars, base), SparsePoly.variable(nvars, base + 1))


def face_determinant(ctype: CombinatorialType, polygon: Polygon,
                     face: Face) -> SparsePoly:
    """The 3x3 area determinant of a face as a polynomial in the
    interior unknowns (equals twice the signed face area)."""
    i, j, k = face
    xi, yi = _coordinate_polys(ctype, polygon, i)
    xj, yj = _coordinate_polys(ctype, polygon, j)
    xk, yk = _coordinate_polys(ctype, polygon, k)
    return xi * (yj - yk) - xj * (yi - yk) + xk * (yi - yj)


def build_system(ctype: CombinatorialType, polygon: Polygon,
                 areas: AreaAssignment) -> PolynomialSystem:
    """Assemble the defining equations for one combinatorial type.

    Faces with no unknown vertex contribute exact residuals to the
    constants report instead of equations.  An area-sum mismatch with
    the polygon area is attached as an infeasibility warning, not an
    error: the variety may simply be empty.
    """
    problems = ctype.validate()
    if problems:
        raise ValueError("invalid combinatorial type: " + problems[0])
    if ctype.n != polygon.n:
        raise ValueError(
            f"type has {ctype.n} boundary vertices, polygon has {polygon.n}"
        )
    for f in ctype.faces:
        areas.area_of(f)  # raises on missing face

    polys: List[SparsePoly] = []
    poly_faces: List[Face] = []
    constants: List[Tuple[Face, Fraction]] = []
    for face in ctype.faces:
        det = face_determinant(ctype, polygon, face)
        eq = det - SparsePoly.constant(det.nvars, 2 * areas.area_of(face))
        if eq.is_constant():
            constants.append((face, eq.constant_value() / 2))
        else:
            polys.append(eq)
            poly_faces.append(face)

    infeasibility = None
    total = areas.total()
    if total != polygon.area():
        infeasibility = (
            f"prescribed areas sum to {total}, polygon area is {polygon.area()}"
        )
    return PolynomialSystem(
        ctype=ctype,
        polygon=polygon,
        areas=areas,
        polys=polys,
        poly_faces=poly_faces,
        constants_report=constants,
        infeasibility=infeasibility,
    )


def face_area_sum(ctype: CombinatorialType, polygon: Polygon,
                  assignment: Sequence[complex]) -> complex:
    """Sum of half-determinant face areas at an arbitrary complex
    assignment of the interior coordinates.  Identically equal to the
    polygon's oriented area, for any assignment."""
    total = 0j
    point = list(assignment)
    for face in ctype.faces:
        det = face_determinant(ctype, polygon, face)
        total += det.eval_complex(point) / 2
    return total
