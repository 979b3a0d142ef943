"""Planar and projective geometry primitives.

Two arithmetic regimes coexist: complex doubles for the numeric solver
and exact `Fraction` arithmetic for polygon validation, feasibility
checks and certificates.  Signed areas follow the half-determinant
convention, positive for anticlockwise triangles.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence, Tuple

Complex2 = Tuple[complex, complex]
Rational2 = Tuple[Fraction, Fraction]


def triangle_area(p1: Complex2, p2: Complex2, p3: Complex2) -> complex:
    """Signed area of the (possibly complex) triangle p1 p2 p3."""
    (x1, y1), (x2, y2), (x3, y3) = p1, p2, p3
    return (x1 * (y2 - y3) - x2 * (y1 - y3) + x3 * (y1 - y2)) / 2


def triangle_area_exact(p1: Rational2, p2: Rational2, p3: Rational2) -> Fraction:
    (x1, y1), (x2, y2), (x3, y3) = p1, p2, p3
    return (x1 * (y2 - y3) - x2 * (y1 - y3) + x3 * (y1 - y2)) / 2


def polygon_area(points: Sequence[Complex2], ref: Complex2) -> complex:
    """Signed area of a closed vertex chain, summed as triangles against
    an arbitrary reference point.  The value does not depend on `ref`."""
    if len(points) < 3:
        raise ValueError("need at least 3 points")
    total = 0j
    for i in range(len(points)):
        total += triangle_area(points[i], points[(i + 1) % len(points)], ref)
    return total


def polygon_area_exact(points: Sequence[Rational2]) -> Fraction:
    """Exact signed area of a closed rational vertex chain (reference
    point fixed at the origin)."""
    if len(points) < 3:
        raise ValueError("need at least 3 points")
    origin = (Fraction(0), Fraction(0))
    total = Fraction(0)
    for i in range(len(points)):
        total += triangle_area_exact(points[i], points[(i + 1) % len(points)], origin)
    return total


# ---------------------------------------------------------------------------
# projective points
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ProjectivePoint:
    """Homogeneous triple [x:y:z], defined up to a nonzero scalar."""

    x: complex
    y: complex
    z: complex

    def __post_init__(self):
        if self.x == 0 and self.y == 0 and self.z == 0:
            raise ValueError("projective point cannot be all zero")

    def canonicalize(self) -> "ProjectivePoint":
        """Scale so the largest-magnitude coordinate is exactly 1."""
        coords = (self.x, self.y, self.z)
        pivot = max(coords, key=abs)
        return ProjectivePoint(self.x / pivot, self.y / pivot, self.z / pivot)

    def at_infinity(self, tol: float = 1e-8) -> bool:
        return abs(self.canonicalize().z) < tol

    @classmethod
    def from_affine(cls, x: complex, y: complex) -> "ProjectivePoint":
        return cls(x, y, 1.0 + 0j)


def canonicalize(p: ProjectivePoint) -> ProjectivePoint:
    return p.canonicalize()


# ---------------------------------------------------------------------------
# exact predicates
# ---------------------------------------------------------------------------

def orientation(a: Rational2, b: Rational2, c: Rational2) -> int:
    """Sign of the signed area of abc: +1 anticlockwise, -1 clockwise,
    0 collinear.  Exact."""
    area = triangle_area_exact(a, b, c)
    return (area > 0) - (area < 0)


def on_segment(p: Rational2, a: Rational2, b: Rational2) -> bool:
    """True iff p lies on the closed segment ab.  Exact."""
    if orientation(a, b, p) != 0:
        return False
    return (min(a[0], b[0]) <= p[0] <= max(a[0], b[0])
            and min(a[1], b[1]) <= p[1] <= max(a[1], b[1]))


def segments_intersect(a: Rational2, b: Rational2,
                       c: Rational2, d: Rational2) -> bool:
    """True iff closed segments ab and cd share any point.  Exact."""
    o1 = orientation(a, b, c)
    o2 = orientation(a, b, d)
    o3 = orientation(c, d, a)
    o4 = orientation(c, d, b)
    if o1 != o2 and o3 != o4:
        return True
    return (on_segment(c, a, b) or on_segment(d, a, b)
            or on_segment(a, c, d) or on_segment(b, c, d))


def open_segments_intersect(a: Rational2, b: Rational2,
                            c: Rational2, d: Rational2) -> bool:
    """True iff the open interiors of segments ab and cd share a point.

    Segments that merely touch at endpoints do not count; collinear
    overlap of positive length does.  Exact."""
    o1 = orientation(a, b, c)
    o2 = orientation(a, b, d)
    if o1 == 0 and o2 == 0:
        # all four points collinear: open 1-D intervals must overlap
        axis = 0 if a[0] != b[0] else 1
        lo1, hi1 = sorted((a[axis], b[axis]))
        lo2, hi2 = sorted((c[axis], d[axis]))
        return max(lo1, lo2) < min(hi1, hi2)
    o3 = orientation(c, d, a)
    o4 = orientation(c, d, b)
    # a zero orientation puts an endpoint on the other line: the unique
    # common point is then that endpoint, never interior to its own segment
    return o1 != o2 and o3 != o4 and 0 not in (o1, o2, o3, o4)


def point_in_polygon_strict(p: Rational2, vertices: Sequence[Rational2]) -> bool:
    """True iff p is strictly inside the simple polygon.  Exact ray
    crossing with boundary points excluded."""
    n = len(vertices)
    for i in range(n):
        if on_segment(p, vertices[i], vertices[(i + 1) % n]):
            return False
    crossings = 0
    px, py = p
    for i in range(n):
        (x1, y1) = vertices[i]
        (x2, y2) = vertices[(i + 1) % n]
        if (y1 > py) != (y2 > py):
            # x coordinate of the edge at height py, exact comparison
            t = (py - y1) / (y2 - y1)
            xc = x1 + t * (x2 - x1)
            if xc > px:
                crossings += 1
    return crossings % 2 == 1


# ---------------------------------------------------------------------------
# polygons
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Polygon:
    """Simple rational polygon, oriented anticlockwise."""

    vertices: Tuple[Rational2, ...]

    def __post_init__(self):
        n = len(self.vertices)
        if n < 3:
            raise ValueError("polygon needs at least 3 vertices")
        if len(set(self.vertices)) != n:
            raise ValueError("polygon has repeated vertices")
        for i in range(n):
            a, b = self.vertices[i], self.vertices[(i + 1) % n]
            for j in range(i + 1, n):
                c, d = self.vertices[j], self.vertices[(j + 1) % n]
                adjacent = j == i + 1 or (i == 0 and j == n - 1)
                if adjacent:
                    if open_segments_intersect(a, b, c, d):
                        raise ValueError(f"edges {i} and {j} overlap")
                elif segments_intersect(a, b, c, d):
                    raise ValueError(f"edges {i} and {j} intersect: not simple")
        if self.area() <= 0:
            raise ValueError("polygon must be oriented anticlockwise")

    def area(self) -> Fraction:
        return polygon_area_exact(self.vertices)

    @property
    def n(self) -> int:
        return len(self.vertices)

    def vertex(self, label: int) -> Rational2:
        """Vertex by 1-based boundary label."""
        return self.vertices[label - 1]

    @classmethod
    def from_pairs(cls, pairs: Sequence[Tuple[Fraction, Fraction]]) -> "Polygon":
        return cls(tuple((Fraction(x), Fraction(y)) for x, y in pairs))
