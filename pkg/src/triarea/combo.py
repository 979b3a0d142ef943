"""Combinatorial types of polygon triangulations.

A type is the abstract plane graph of a triangulation: boundary cycle
1..n (anticlockwise, labels fixed), interior vertices n+1..N, and a
list of anticlockwise triangular faces.  Interior labels are the only
admissible isomorphism freedom; boundary labels are pinned because
prescribed areas attach to specific faces.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Dict, FrozenSet, Iterator, List, Optional, Set, Tuple

Face = Tuple[int, int, int]
Edge = FrozenSet[int]


class EnumerationCapExceeded(RuntimeError):
    """Raised when type enumeration exceeds its node budget."""


def _normalize_face(face: Face) -> Face:
    """Rotate a face so the smallest label comes first (orientation kept)."""
    k = face.index(min(face))
    return (face[k], face[(k + 1) % 3], face[(k + 2) % 3])


@dataclass(frozen=True)
class CombinatorialType:
    """Plane triangulation of an n-gon with N - n interior vertices."""

    n: int
    num_vertices: int
    faces: Tuple[Face, ...]

    def __post_init__(self):
        object.__setattr__(
            self, "faces", tuple(_normalize_face(tuple(f)) for f in self.faces)
        )

    @property
    def interior_count(self) -> int:
        return self.num_vertices - self.n

    @property
    def interior_vertices(self) -> Tuple[int, ...]:
        return tuple(range(self.n + 1, self.num_vertices + 1))

    @property
    def edges(self) -> Set[Edge]:
        out: Set[Edge] = set()
        for a, b, c in self.faces:
            out.update((frozenset((a, b)), frozenset((b, c)), frozenset((c, a))))
        return out

    def boundary_edges(self) -> Set[Edge]:
        return {frozenset((k, k % self.n + 1)) for k in range(1, self.n + 1)}

    def directed_edge_faces(self) -> Dict[Tuple[int, int], Face]:
        """Map each directed edge to the unique face traversing it."""
        out: Dict[Tuple[int, int], Face] = {}
        for f in self.faces:
            a, b, c = f
            for u, v in ((a, b), (b, c), (c, a)):
                out[(u, v)] = f
        return out

    # -- validation --------------------------------------------------------

    def validate(self) -> List[str]:
        """Return a list of violations; empty iff the type is a valid
        plane triangulation of the n-gon."""
        problems: List[str] = []
        n, nv = self.n, self.num_vertices
        if n < 3:
            problems.append(f"boundary length {n} < 3")
        if nv < n:
            problems.append(f"total vertex count {nv} < boundary count {n}")
        for f in self.faces:
            if len(set(f)) != 3:
                problems.append(f"face {f} is not a triangle")
            if any(v < 1 or v > nv for v in f):
                problems.append(f"face {f} uses out-of-range vertex")
        if problems:
            return problems

        directed: Dict[Tuple[int, int], int] = {}
        for f in self.faces:
            a, b, c = f
            for u, v in ((a, b), (b, c), (c, a)):
                directed[(u, v)] = directed.get((u, v), 0) + 1
        for (u, v), count in directed.items():
            if count > 1:
                problems.append(f"directed edge {u}->{v} used {count} times")

        boundary_dir = {(k, k % n + 1) for k in range(1, n + 1)}
        for u, v in boundary_dir:
            if (u, v) not in directed:
                problems.append(f"boundary edge {u}->{v} missing from faces")
            if (v, u) in directed:
                problems.append(f"boundary edge {u}-{v} bordered on both sides")
        for (u, v) in directed:
            if (u, v) in boundary_dir:
                continue
            if (v, u) not in directed and (v, u) not in boundary_dir:
                problems.append(f"interior edge {u}-{v} borders only one face")

        seen_vertices = {v for f in self.faces for v in f}
        for v in range(1, nv + 1):
            if v not in seen_vertices:
                problems.append(f"vertex {v} appears in no face")

        num_edges = len(self.edges)
        num_faces = len(self.faces) + 1  # outer face included
        if nv - num_edges + num_faces != 2:
            problems.append(
                f"Euler violation: V-E+F = {nv - num_edges + num_faces} != 2"
            )
        expected_faces = n - 2 + 2 * self.interior_count
        if len(self.faces) != expected_faces:
            problems.append(
                f"face count {len(self.faces)} != n-2+2i = {expected_faces}"
            )
        if problems:
            return problems

        for v in range(1, nv + 1):
            err = self._umbrella_violation(v)
            if err:
                problems.append(err)
        return problems

    def _umbrella_violation(self, v: int) -> Optional[str]:
        """Check that the faces around v chain into one fan (path for
        boundary vertices, cycle for interior ones)."""
        succ: Dict[int, int] = {}
        for f in self.faces:
            if v not in f:
                continue
            i = f.index(v)
            a, b = f[(i + 1) % 3], f[(i + 2) % 3]
            if a in succ:
                return f"vertex {v}: edge to {a} borders two faces on one side"
            succ[a] = b
        if not succ:
            return f"vertex {v} appears in no face"
        if v <= self.n:
            start = v % self.n + 1
            stop = (v - 2) % self.n + 1
        else:
            start = next(iter(succ))
            stop = start
        cur, steps = start, 0
        while steps < len(succ):
            if cur not in succ:
                return f"vertex {v}: face fan is disconnected"
            cur = succ[cur]
            steps += 1
        if cur != stop:
            return f"vertex {v}: face fan does not close properly"
        return None

    def rotation(self, v: int) -> List[int]:
        """Anticlockwise neighbor order around v.  For boundary vertex k
        the list runs from k+1 to k-1 along the interior side."""
        succ: Dict[int, int] = {}
        for f in self.faces:
            if v not in f:
                continue
            i = f.index(v)
            succ[f[(i + 1) % 3]] = f[(i + 2) % 3]
        if v <= self.n:
            start = v % self.n + 1
        else:
            start = min(succ)
        order = [start]
        cur = succ[start]
        while cur != start and len(order) <= len(succ):
            order.append(cur)
            if cur not in succ:
                break
            cur = succ[cur]
        return order

    # -- isomorphism -------------------------------------------------------

    def relabel_interior(self, perm: Dict[int, int]) -> "CombinatorialType":
        """Apply a permutation of interior labels (boundary fixed)."""
        full = {v: v for v in range(1, self.n + 1)}
        full.update(perm)
        faces = tuple(
            (full[a], full[b], full[c]) for a, b, c in self.faces
        )
        return CombinatorialType(self.n, self.num_vertices, faces)

    def canonical_form(self) -> bytes:
        """Canonical byte string: equal iff two types are isomorphic by a
        plane-graph isomorphism fixing every boundary label."""
        problems = self.validate()
        if problems:
            raise ValueError("cannot canonicalize invalid type: " + problems[0])
        interior = self.interior_vertices
        best = None
        for perm_targets in itertools.permutations(interior):
            perm = dict(zip(interior, perm_targets))
            faces = sorted(self.relabel_interior(perm).faces)
            if best is None or faces < best:
                best = faces
        return repr((self.n, self.num_vertices, best)).encode()

    # -- local moves -------------------------------------------------------

    def flippable_edges(self) -> List[Edge]:
        boundary = self.boundary_edges()
        return [e for e in self.edges if e not in boundary]

    def flip(self, edge: Edge) -> Optional["CombinatorialType"]:
        """Flip an interior edge; None if the flip would create a
        multi-edge or the edge is not flippable."""
        a, b = tuple(edge)
        by_directed = self.directed_edge_faces()
        if (a, b) not in by_directed or (b, a) not in by_directed:
            return None
        f1 = by_directed[(a, b)]
        f2 = by_directed[(b, a)]
        c = next(v for v in f1 if v not in (a, b))
        d = next(v for v in f2 if v not in (a, b))
        if c == d or frozenset((c, d)) in self.edges:
            return None
        faces = [f for f in self.faces if f not in (f1, f2)]
        faces += [(a, d, c), (b, c, d)]
        candidate = CombinatorialType(self.n, self.num_vertices, tuple(faces))
        if candidate.validate():
            return None
        return candidate

    def split_face(self, face: Face) -> "CombinatorialType":
        """Insert a new interior vertex into a face (1 -> 3 split)."""
        face = _normalize_face(face)
        if face not in self.faces:
            raise ValueError(f"{face} is not a face of this type")
        w = self.num_vertices + 1
        a, b, c = face
        faces = [f for f in self.faces if f != face]
        faces += [(a, b, w), (b, c, w), (c, a, w)]
        return CombinatorialType(self.n, self.num_vertices + 1, tuple(faces))


def fan_type(n: int, apex: int = 1) -> CombinatorialType:
    """Fan triangulation of the n-gon from a boundary vertex."""
    faces = []
    for j in range(1, n - 1):
        a = (apex - 1 + j) % n + 1
        b = (apex + j) % n + 1
        faces.append((apex, a, b))
    return CombinatorialType(n, n, tuple(faces))


def cone_type(n: int) -> CombinatorialType:
    """Cone: one interior vertex joined to every boundary vertex."""
    w = n + 1
    faces = tuple((k, k % n + 1, w) for k in range(1, n + 1))
    return CombinatorialType(n, n + 1, faces)


def enumerate_types(n: int, i: int, cap: int = 200_000) -> List[CombinatorialType]:
    """All combinatorial types with n boundary and exactly i interior
    vertices, one representative per boundary-fixing isomorphism class.

    Starts from the fan triangulations and closes under interior-edge
    flips and 1->3 face splits, deduplicating by canonical form.
    """
    if n < 3:
        raise ValueError("n must be at least 3")
    if i < 0:
        raise ValueError("interior count must be nonnegative")
    seen: Dict[bytes, CombinatorialType] = {}
    frontier: List[CombinatorialType] = []
    for apex in range(1, n + 1):
        t = fan_type(n, apex)
        key = t.canonical_form()
        if key not in seen:
            seen[key] = t
            frontier.append(t)
    visited = len(frontier)
    while frontier:
        nxt: List[CombinatorialType] = []
        for t in frontier:
            moves: List[CombinatorialType] = []
            for e in t.flippable_edges():
                flipped = t.flip(e)
                if flipped is not None:
                    moves.append(flipped)
            if t.interior_count < i:
                moves.extend(t.split_face(f) for f in t.faces)
            for cand in moves:
                visited += 1
                if visited > cap:
                    raise EnumerationCapExceeded(
                        f"type enumeration exceeded cap of {cap} candidates"
                    )
                key = cand.canonical_form()
                if key not in seen:
                    seen[key] = cand
                    nxt.append(cand)
        frontier = nxt
    out = [t for t in seen.values() if t.interior_count == i]
    out.sort(key=lambda t: t.canonical_form())
    return out
