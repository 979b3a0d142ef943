"""Structural analysis of divergent homotopy paths.

When a path escapes toward the line at infinity, the finite-limit
subgraph tells a story: faces of the finite part that are faces of the
original type keep their prescribed area in the limit, merged faces
collapse (their surviving corner points become collinear), and the
aggregate area defect measures how much area escaped.  The inspector
reconstructs that picture from the last tracked sample; it is a
diagnostic, not a proof, since no projective endgame is run.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Set, Tuple

import numpy as np

from .combo import CombinatorialType, Face
from .config import Config, DEFAULT_CONFIG
from .geom import Polygon, ProjectivePoint, polygon_area
from .homotopy import PathResult
from .poly import AreaAssignment


class InspectionError(RuntimeError):
    pass


@dataclass
class FaceRecord:
    """One bounded face of the finite subgraph H."""

    walk: Tuple[int, ...]            # anticlockwise boundary walk
    group_faces: Tuple[Face, ...]    # faces of G merged into this face
    is_g_face: bool
    prescribed_area: Fraction        # S_f: sum of prescribed areas inside
    limit_area: complex              # S'_f: oriented area of the limit walk
    collinearity_deviation: Optional[float]  # non-G faces only


@dataclass
class DegenerationReport:
    path: PathResult
    points_at_infinity: Dict[int, ProjectivePoint]
    finite_points: Dict[int, Tuple[complex, complex]]  # limit coordinates
    h_prime_vertices: Set[int]
    h_vertices: Set[int]
    h_edges: Set[frozenset]
    faces: List[FaceRecord]
    warnings: List[str] = field(default_factory=list)


@dataclass
class AreaSumAudit:
    sum_prescribed: Fraction         # sum of S_f over bounded faces of H
    sum_limit: complex               # sum of S'_f
    polygon_area: Fraction
    defect: float                    # sum(S_f - Re S'_f)

    @property
    def near_solution(self) -> bool:
        """A defect near zero means the tracker stopped short of a real
        degeneration: a genuine limit at infinity forces positive defect."""
        return abs(self.defect) < 1e-6


def _cyclic_predecessor(order: Sequence[int], item: int) -> int:
    idx = order.index(item)
    return order[idx - 1]


def inspect(ctype: CombinatorialType, areas: AreaAssignment, path: PathResult,
            polygon: Polygon, config: Config = DEFAULT_CONFIG) -> DegenerationReport:
    """Classify escaping vertices and rebuild the finite subgraph's
    bounded faces with their prescribed and limit areas."""
    if not path.diverged:
        raise InspectionError(f"path has status {path.status!r}, need diverged")

    at_infinity: Dict[int, ProjectivePoint] = {}
    finite: Dict[int, Tuple[complex, complex]] = {}
    warnings: List[str] = []
    for k in range(1, ctype.n + 1):
        vx, vy = polygon.vertex(k)
        finite[k] = (complex(vx), complex(vy))
    magnitudes = {}
    for v, limit in path.projective_limits.items():
        if abs(limit.z) < config.degen_infinity_tol:
            at_infinity[v] = limit
        else:
            finite[v] = (limit.x / limit.z, limit.y / limit.z)
        magnitudes[v] = max(abs(limit.x / limit.z), abs(limit.y / limit.z)) \
            if abs(limit.z) > 0 else float("inf")
    if not at_infinity:
        raise InspectionError(
            "path is marked diverged but no interior point classifies "
            "at infinity; tracker and classifier disagree")

    # flag escape-rate ambiguity: finite and infinite points whose sampled
    # magnitudes sit within a small factor of the truncation threshold
    for v, mag in magnitudes.items():
        if v in finite and mag * config.degen_mixed_rate_factor \
                > config.truncation_magnitude:
            warnings.append(
                f"vertex {v} is classified finite but its sample magnitude "
                f"{mag:.3e} is within a factor {config.degen_mixed_rate_factor:g} "
                "of the truncation threshold")

    # H': induced subgraph on finite vertices; H: component with boundary
    h_prime_vertices = set(finite)
    adjacency: Dict[int, Set[int]] = {v: set() for v in h_prime_vertices}
    for e in ctype.edges:
        a, b = tuple(e)
        if a in h_prime_vertices and b in h_prime_vertices:
            adjacency[a].add(b)
            adjacency[b].add(a)
    h_vertices: Set[int] = set()
    stack = [1]
    while stack:
        v = stack.pop()
        if v in h_vertices:
            continue
        h_vertices.add(v)
        stack.extend(adjacency[v] - h_vertices)
    h_edges = {e for e in ctype.edges if set(e) <= h_vertices}

    faces = _trace_faces(ctype, areas, h_vertices, h_edges, finite, config)
    return DegenerationReport(
        path=path,
        points_at_infinity=at_infinity,
        finite_points=finite,
        h_prime_vertices=h_prime_vertices,
        h_vertices=h_vertices,
        h_edges=h_edges,
        faces=faces,
        warnings=warnings,
    )


def _trace_faces(ctype: CombinatorialType, areas: AreaAssignment,
                 h_vertices: Set[int], h_edges: Set[frozenset],
                 finite: Dict[int, Tuple[complex, complex]],
                 config: Config) -> List[FaceRecord]:
    # union-find over G faces, merged across edges absent from H
    parent: Dict[Face, Face] = {f: f for f in ctype.faces}

    def find(f: Face) -> Face:
        while parent[f] != f:
            parent[f] = parent[parent[f]]
            f = parent[f]
        return f

    def union(f1: Face, f2: Face):
        r1, r2 = find(f1), find(f2)
        if r1 != r2:
            parent[r2] = r1

    directed = ctype.directed_edge_faces()
    for (u, v), f in directed.items():
        if frozenset((u, v)) in h_edges:
            continue
        twin = directed.get((v, u))
        if twin is not None:
            union(f, twin)

    groups: Dict[Face, List[Face]] = {}
    for f in ctype.faces:
        groups.setdefault(find(f), []).append(f)

    # rotation of H inherited from the embedding of G
    rotations: Dict[int, List[int]] = {}
    for v in h_vertices:
        rot = [u for u in ctype.rotation(v) if u in h_vertices
               and frozenset((u, v)) in h_edges]
        if rot:
            rotations[v] = rot

    # trace all faces; the walk containing the clockwise boundary edge
    # (2, 1) bounds the outer region and is discarded
    unused = {(u, v) for v in rotations for u in rotations[v]
              if frozenset((u, v)) in h_edges}
    unused = {(u, v) for (u, v) in unused if v in rotations and u in rotations}
    walks: List[Tuple[int, ...]] = []
    outer_edge = (2, 1) if ctype.n >= 2 else None
    while unused:
        start = min(unused)
        walk_edges = []
        edge = start
        for _ in range(2 * len(unused) + 4):
            walk_edges.append(edge)
            unused.discard(edge)
            u, v = edge
            w = _cyclic_predecessor(rotations[v], u)
            edge = (v, w)
            if edge == start:
                break
        walks.append(tuple(e[0] for e in walk_edges))

    records: List[FaceRecord] = []
    for walk in walks:
        edge_set = {(walk[i], walk[(i + 1) % len(walk)])
                    for i in range(len(walk))}
        if outer_edge in edge_set:
            continue  # outer face
        group = None
        for (u, v) in edge_set:
            if (u, v) in directed:
                group = groups[find(directed[(u, v)])]
                break
        if group is None:
            continue
        prescribed = sum((areas.area_of(f) for f in group), Fraction(0))
        pts = [finite[v] for v in walk]
        ref = pts[0]
        limit_area = polygon_area(pts, ref) if len(pts) >= 3 else 0j
        is_g_face = len(group) == 1 and set(walk) == set(group[0])
        deviation = None
        if not is_g_face:
            deviation = collinearity_deviation(
                [finite[v] for v in sorted(set(walk))])
        records.append(FaceRecord(
            walk=walk, group_faces=tuple(group), is_g_face=is_g_face,
            prescribed_area=prescribed, limit_area=limit_area,
            collinearity_deviation=deviation))
    return records


def collinearity_deviation(points: Sequence[Tuple[complex, complex]]) -> float:
    """Smallest over largest singular value of the centered coordinate
    matrix; 0 for exactly collinear (or fewer than 3) points."""
    if len(points) < 3:
        return 0.0
    m = np.array([[x, y] for x, y in points], dtype=np.complex128)
    m -= m.mean(axis=0)
    svals = np.linalg.svd(m, compute_uv=False)
    if svals[0] == 0:
        return 0.0
    return float(svals[-1] / svals[0])


def area_sum_audit(report: DegenerationReport, polygon: Polygon) -> AreaSumAudit:
    """Compare prescribed and limit area sums over the bounded faces of
    the finite subgraph.  A genuine degeneration leaves a positive
    defect: area escapes with the points at infinity."""
    sum_prescribed = sum((r.prescribed_area for r in report.faces), Fraction(0))
    sum_limit = sum((r.limit_area for r in report.faces), 0j)
    defect = float(sum_prescribed) - sum_limit.real
    return AreaSumAudit(
        sum_prescribed=sum_prescribed,
        sum_limit=sum_limit,
        polygon_area=polygon.area(),
        defect=defect,
    )
