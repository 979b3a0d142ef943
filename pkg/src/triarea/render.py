"""Deterministic SVG drawings of solved triangulations."""

from __future__ import annotations

from fractions import Fraction
from typing import Dict, List, Optional, Tuple

from .combo import CombinatorialType
from .geom import Polygon
from .poly import AreaAssignment


def _fmt(value: float) -> str:
    return f"{value:.6f}".rstrip("0").rstrip(".")


def render_solution_svg(ctype: CombinatorialType, polygon: Polygon,
                        areas: AreaAssignment,
                        interior: Dict[int, Tuple[float, float]],
                        width: float = 480.0,
                        escape_directions: Optional[Dict[int, Tuple[float, float]]] = None
                        ) -> str:
    """SVG 1.1 document: polygon outline, all edges, vertex markers and
    one area label per face.  Output is byte-deterministic for fixed
    input.  `escape_directions` optionally overlays arrows for vertices
    escaping to infinity."""
    pos: Dict[int, Tuple[float, float]] = {}
    for k in range(1, polygon.n + 1):
        vx, vy = polygon.vertex(k)
        pos[k] = (float(vx), float(vy))
    pos.update(interior)

    xs = [p[0] for p in pos.values()]
    ys = [p[1] for p in pos.values()]
    lox, hix = min(xs), max(xs)
    loy, hiy = min(ys), max(ys)
    span_x = hix - lox or 1.0
    span_y = hiy - loy or 1.0
    margin_x = 0.05 * span_x
    margin_y = 0.05 * span_y
    vb = (lox - margin_x, loy - margin_y,
          span_x + 2 * margin_x, span_y + 2 * margin_y)
    height = width * vb[3] / vb[2]
    scale = width / vb[2]

    def to_screen(p: Tuple[float, float]) -> Tuple[float, float]:
        # flip y: SVG grows downward
        return ((p[0] - vb[0]) * scale, (vb[1] + vb[3] - p[1]) * scale)

    lines: List[str] = []
    lines.append('<?xml version="1.0" encoding="UTF-8"?>')
    lines.append(
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
        f'width="{_fmt(width)}" height="{_fmt(height)}" '
        f'viewBox="0 0 {_fmt(width)} {_fmt(height)}">')

    outline = " ".join(
        f"{_fmt(x)},{_fmt(y)}"
        for x, y in (to_screen(pos[k]) for k in range(1, polygon.n + 1)))
    lines.append(
        f'<polygon class="outline" points="{outline}" fill="#f7f7f7" '
        'stroke="#222222" stroke-width="2"/>')

    edges = sorted(tuple(sorted(e)) for e in ctype.edges)
    for a, b in edges:
        (x1, y1), (x2, y2) = to_screen(pos[a]), to_screen(pos[b])
        lines.append(
            f'<line class="edge" x1="{_fmt(x1)}" y1="{_fmt(y1)}" '
            f'x2="{_fmt(x2)}" y2="{_fmt(y2)}" stroke="#555555" stroke-width="1"/>')

    for face in ctype.faces:
        cx = sum(pos[v][0] for v in face) / 3
        cy = sum(pos[v][1] for v in face) / 3
        sx, sy = to_screen((cx, cy))
        label = str(areas.area_of(face))
        lines.append(
            f'<text class="face-label" x="{_fmt(sx)}" y="{_fmt(sy)}" '
            f'font-size="11" text-anchor="middle" fill="#006400">{label}</text>')

    for v in sorted(pos):
        sx, sy = to_screen(pos[v])
        fill = "#c02020" if v > polygon.n else "#2020c0"
        lines.append(
            f'<circle class="vertex" cx="{_fmt(sx)}" cy="{_fmt(sy)}" r="3.5" '
            f'fill="{fill}"/>')
        lines.append(
            f'<text class="vertex-label" x="{_fmt(sx + 6)}" y="{_fmt(sy - 6)}" '
            f'font-size="10" fill="#000000">v{v}</text>')

    if escape_directions:
        for v in sorted(escape_directions):
            dx, dy = escape_directions[v]
            norm = (dx * dx + dy * dy) ** 0.5 or 1.0
            cx = vb[0] + vb[2] / 2
            cy = vb[1] + vb[3] / 2
            x1, y1 = to_screen((cx, cy))
            x2, y2 = to_screen((cx + 0.4 * vb[2] * dx / norm,
                                cy + 0.4 * vb[3] * dy / norm))
            lines.append(
                f'<line class="escape" x1="{_fmt(x1)}" y1="{_fmt(y1)}" '
                f'x2="{_fmt(x2)}" y2="{_fmt(y2)}" stroke="#c02020" '
                'stroke-width="1.5" stroke-dasharray="4 3"/>')
            lines.append(
                f'<text class="escape-label" x="{_fmt(x2)}" y="{_fmt(y2)}" '
                f'font-size="10" fill="#c02020">v{v} to infinity</text>')

    lines.append("</svg>")
    return "\n".join(lines) + "\n"
