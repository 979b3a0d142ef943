"""Algebraicity certificates by exact resultant elimination.

For rational polygon and areas, each interior coordinate of a solution
is a root of a nonzero integer polynomial.  The certificate is built
purely symbolically: iterated Sylvester resultants eliminate the other
unknowns one at a time, with content removal at each step and a
square-free reduction of the final univariate polynomial.  Numeric data
enters only when matching a solved coordinate against the roots.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from .poly import PolynomialSystem, SparsePoly
from .solve import SolutionSet

MAX_ELIMINATION_VARIABLES = 4  # i <= 2; resultant growth binds above this


class EliminationError(RuntimeError):
    """All elimination orders produced the zero polynomial."""


# ---------------------------------------------------------------------------
# univariate helpers over Q
# ---------------------------------------------------------------------------

def _uni_trim(c: List[Fraction]) -> List[Fraction]:
    while c and c[-1] == 0:
        c.pop()
    return c


def _uni_mul(a: Sequence[Fraction], b: Sequence[Fraction]) -> List[Fraction]:
    if not a or not b:
        return []
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, ca in enumerate(a):
        for j, cb in enumerate(b):
            out[i + j] += ca * cb
    return out


def _uni_rem(a: List[Fraction], b: Sequence[Fraction]) -> List[Fraction]:
    a = list(a)
    db = len(b) - 1
    lead = b[-1]
    while len(a) - 1 >= db and a:
        factor = a[-1] / lead
        shift = len(a) - 1 - db
        for i, cb in enumerate(b):
            a[shift + i] -= factor * cb
        _uni_trim(a)
        if not a:
            break
    return a


def _uni_gcd(a: List[Fraction], b: List[Fraction]) -> List[Fraction]:
    a, b = _uni_trim(list(a)), _uni_trim(list(b))
    while b:
        a, b = b, _uni_rem(a, b)
        _uni_trim(b)
    if a:
        lead = a[-1]
        a = [c / lead for c in a]
    return a


def _uni_derivative(a: Sequence[Fraction]) -> List[Fraction]:
    return _uni_trim([a[i] * i for i in range(1, len(a))])


def _uni_divide_exact(a: List[Fraction], b: Sequence[Fraction]) -> List[Fraction]:
    out = [Fraction(0)] * (len(a) - len(b) + 1)
    a = list(a)
    lead = b[-1]
    while len(a) >= len(b) and a:
        factor = a[-1] / lead
        shift = len(a) - len(b)
        out[shift] = factor
        for i, cb in enumerate(b):
            a[shift + i] -= factor * cb
        _uni_trim(a)
    return _uni_trim(out)


def _uni_squarefree(a: List[Fraction]) -> List[Fraction]:
    d = _uni_derivative(a)
    if not d:
        return a
    g = _uni_gcd(list(a), d)
    if len(g) <= 1:
        return a
    return _uni_divide_exact(list(a), g)


def to_integer_coeffs(a: Sequence[Fraction]) -> List[int]:
    """Clear denominators, remove content, make the leading coefficient
    positive.  Coefficients lowest-degree first."""
    coeffs = _uni_trim(list(a))
    if not coeffs:
        return []
    from math import gcd, lcm
    denom = 1
    for c in coeffs:
        denom = lcm(denom, c.denominator)
    ints = [int(c * denom) for c in coeffs]
    g = 0
    for c in ints:
        g = gcd(g, abs(c))
    ints = [c // g for c in ints]
    if ints[-1] < 0:
        ints = [-c for c in ints]
    return ints


# ---------------------------------------------------------------------------
# resultants of sparse multivariate polynomials
# ---------------------------------------------------------------------------

def _as_univariate(p: SparsePoly, var: int) -> List[SparsePoly]:
    """Coefficient list of p in `var`, lowest power first; coefficients
    are polynomials in the remaining variables (exponent of `var` zeroed)."""
    deg = p.degree_in(var)
    coeffs = [SparsePoly(p.nvars) for _ in range(deg + 1)]
    for e, c in p.terms.items():
        k = e[var]
        ne = list(e)
        ne[var] = 0
        coeffs[k] = coeffs[k] + SparsePoly(p.nvars, {tuple(ne): c})
    return coeffs


def _poly_det(matrix: List[List[SparsePoly]], nvars: int) -> SparsePoly:
    """Determinant by cofactor expansion; fine at Sylvester sizes <= 4."""
    n = len(matrix)
    if n == 0:
        return SparsePoly.constant(nvars, 1)
    if n == 1:
        return matrix[0][0]
    total = SparsePoly(nvars)
    for col in range(n):
        entry = matrix[0][col]
        if entry.is_zero():
            continue
        minor = [[row[c] for c in range(n) if c != col] for row in matrix[1:]]
        cofactor = entry * _poly_det(minor, nvars)
        total = total + cofactor if col % 2 == 0 else total - cofactor
    return total


def sylvester_resultant(p: SparsePoly, q: SparsePoly, var: int) -> SparsePoly:
    """Resultant of p and q with respect to one variable."""
    a = _as_univariate(p, var)
    b = _as_univariate(q, var)
    m, n = len(a) - 1, len(b) - 1
    if m == 0 and n == 0:
        raise ValueError("neither polynomial involves the variable")
    if m == 0:
        # res(constant-in-var, q) = a0^deg(q)
        out = SparsePoly.constant(p.nvars, 1)
        for _ in range(n):
            out = out * a[0]
        return out
    if n == 0:
        out = SparsePoly.constant(p.nvars, 1)
        for _ in range(m):
            out = out * b[0]
        return out
    size = m + n
    zero = SparsePoly(p.nvars)
    rows: List[List[SparsePoly]] = []
    for shift in range(n):
        row = [zero] * size
        for i, coeff in enumerate(reversed(a)):
            row[shift + i] = coeff
        rows.append(row)
    for shift in range(m):
        row = [zero] * size
        for i, coeff in enumerate(reversed(b)):
            row[shift + i] = coeff
        rows.append(row)
    return _poly_det(rows, p.nvars)


def _remove_content(p: SparsePoly) -> SparsePoly:
    if p.is_zero():
        return p
    from math import gcd, lcm
    denom = 1
    for c in p.terms.values():
        denom = lcm(denom, c.denominator)
    nums = [int(c * denom) for c in p.terms.values()]
    g = 0
    for v in nums:
        g = gcd(g, abs(v))
    return p.scale(Fraction(denom, g))


def eliminate(system: Sequence[SparsePoly], keep: int,
              max_vars: int = MAX_ELIMINATION_VARIABLES) -> List[int]:
    """Integer polynomial in variable `keep` vanishing on the
    `keep`-coordinate of every common solution of the system.

    Eliminates the other variables one at a time via pairwise Sylvester
    resultants against a minimal-degree pivot.  Zero resultants are
    dropped; if an elimination order leaves nothing, the remaining
    orders are tried before giving up.
    """
    system = [p for p in system if not p.is_zero()]
    if not system:
        raise EliminationError("empty system")
    nvars = system[0].nvars
    if nvars > max_vars:
        raise EliminationError(
            f"{nvars} variables exceeds the elimination cap of {max_vars}")
    others = [v for v in range(nvars) if v != keep]
    last_error: Optional[str] = None
    for order in itertools.permutations(others):
        result = _eliminate_in_order(system, keep, list(order))
        if result is not None:
            return result
        last_error = f"elimination order {order} collapsed to zero"
    raise EliminationError(
        last_error or "no elimination order produced a nonzero polynomial")


def _eliminate_in_order(system: Sequence[SparsePoly], keep: int,
                        order: List[int]) -> Optional[List[int]]:
    polys = list(system)
    for var in order:
        involved = [p for p in polys if p.degree_in(var) > 0]
        untouched = [p for p in polys if p.degree_in(var) == 0]
        if not involved:
            polys = untouched
            continue
        involved.sort(key=lambda p: (p.degree_in(var), p.total_degree()))
        pivot = involved[0]
        new_polys: List[SparsePoly] = []
        for other in involved[1:]:
            res = sylvester_resultant(pivot, other, var)
            if not res.is_zero():
                new_polys.append(_remove_content(res))
        if not new_polys and not untouched:
            return None
        polys = untouched + new_polys

    univariate: List[List[Fraction]] = []
    for p in polys:
        if p.is_zero() or p.is_constant():
            continue
        if any(v != keep for v in p.variables_used()):
            continue
        coeffs = [c.constant_value() for c in _as_univariate(p, keep)]
        univariate.append(_uni_trim(coeffs))
    if not univariate:
        return None
    acc = univariate[0]
    for nxt in univariate[1:]:
        g = _uni_gcd(list(acc), list(nxt))
        if len(g) > 1:
            acc = g
    acc = _uni_squarefree(acc)
    return to_integer_coeffs(acc)


# ---------------------------------------------------------------------------
# certificates
# ---------------------------------------------------------------------------

@dataclass
class CoordinateCertificate:
    variable: str
    polynomial: List[int]  # lowest-degree-first integer coefficients
    numeric_value: complex
    matched_root: Optional[complex]
    residual: float
    residual_bound: float

    @property
    def matched(self) -> bool:
        return self.matched_root is not None

    def evaluate_exact(self, value: Fraction) -> Fraction:
        total = Fraction(0)
        power = Fraction(1)
        for c in self.polynomial:
            total += c * power
            power *= value
        return total


@dataclass
class AlgebraicityCertificate:
    coordinates: List[CoordinateCertificate]

    @property
    def all_matched(self) -> bool:
        return all(c.matched for c in self.coordinates)


def _poly_eval_complex(coeffs: Sequence[int], z: complex) -> complex:
    total = 0j
    for c in reversed(coeffs):
        total = total * z + c
    return total


def _match_root(coeffs: Sequence[int], value: complex,
                tol: float = 1e-8) -> Tuple[Optional[complex], float, float]:
    degree = len(coeffs) - 1
    roots = np.roots(list(reversed(coeffs))) if degree >= 1 else np.array([])
    matched = None
    if len(roots):
        idx = int(np.argmin(np.abs(roots - value)))
        if abs(roots[idx] - value) < tol:
            matched = complex(roots[idx])
    residual = abs(_poly_eval_complex(coeffs, value))
    max_coeff = max(abs(c) for c in coeffs)
    bound = degree * max_coeff * tol * max(1.0, abs(value)) ** max(0, degree - 1)
    return matched, residual, bound


def certify(solution_set: SolutionSet,
            tol: float = 1e-8) -> List[AlgebraicityCertificate]:
    """One certificate per solution: an annihilating integer polynomial
    for every interior coordinate, with the numeric root match."""
    system = solution_set.system
    exact_polys = system.polys
    names = system.variable_names()
    # cache eliminations: they do not depend on the solution
    annihilators: Dict[int, List[int]] = {}
    out: List[AlgebraicityCertificate] = []
    for sol in solution_set.solutions:
        coords: List[CoordinateCertificate] = []
        for var in range(system.unknown_count):
            if var not in annihilators:
                annihilators[var] = eliminate(exact_polys, var)
            poly = annihilators[var]
            value = complex(sol.vector[var])
            matched, residual, bound = _match_root(poly, value, tol)
            coords.append(CoordinateCertificate(
                variable=names[var], polynomial=poly, numeric_value=value,
                matched_root=matched, residual=residual, residual_bound=bound))
        out.append(AlgebraicityCertificate(coordinates=coords))
    return out
