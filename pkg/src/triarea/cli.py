"""Command-line interface: solve | render | inspect | enumerate-types.

Problem files are JSON with named fields:

    {
      "polygon": [["0", "0"], ["1", "0"], ["1", "1"], ["0", "1"]],
      "type": {"n": 4, "vertices": 5,
               "faces": [[1, 2, 5], [2, 3, 5], [3, 4, 5], [4, 1, 5]]},
      "areas": ["1/8", "1/4", "3/8", "1/4"]
    }

`type` may instead be {"enumerate": {"n": 4, "i": 1}} and `areas` may be
{"equal": true} (every face gets polygonArea / faceCount).  Rationals
are always "p/q" or integer strings, never floats.  The optional
"square_faces" field forces the square-subsystem selection to the
listed face triples.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, fields as dc_fields
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple, Union

import numpy as np

from .combo import (CombinatorialType, Face, _normalize_face,
                    enumerate_types)
from .config import Config, DEFAULT_CONFIG
from .degen import area_sum_audit, inspect as degen_inspect
from .exact import AlgebraicityCertificate, EliminationError, certify
from .geom import Polygon
from .poly import AreaAssignment, build_system
from .render import render_solution_svg
from .solve import SolutionSet, solve

EXIT_OK = 0
EXIT_PARSE = 2
EXIT_INFEASIBLE = 3
EXIT_PATH_FAILURES = 4


class ProblemParseError(ValueError):
    pass


@dataclass(frozen=True)
class EnumerateDirective:
    n: int
    i: int


@dataclass(frozen=True)
class ProblemFile:
    polygon: Polygon
    type_spec: Union[CombinatorialType, EnumerateDirective]
    areas_spec: Union[Tuple[Fraction, ...], str]  # tuple or "equal"
    square_faces: Optional[Tuple[Face, ...]] = None


# ---------------------------------------------------------------------------
# parsing / serialization
# ---------------------------------------------------------------------------

def _parse_rational(text, where: str) -> Fraction:
    if isinstance(text, int):
        return Fraction(text)
    if not isinstance(text, str):
        raise ProblemParseError(
            f"{where}: expected rational string, got {type(text).__name__}")
    try:
        value = Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise ProblemParseError(f"{where}: bad rational {text!r} ({exc})")
    return value


def parse_problem(data: dict) -> ProblemFile:
    if not isinstance(data, dict):
        raise ProblemParseError("problem file must be a JSON object")
    for key in ("polygon", "type", "areas"):
        if key not in data:
            raise ProblemParseError(f"missing field {key!r}")
    unknown = set(data) - {"polygon", "type", "areas", "square_faces"}
    if unknown:
        raise ProblemParseError(f"unknown field(s): {sorted(unknown)}")

    raw_poly = data["polygon"]
    if not isinstance(raw_poly, list) or len(raw_poly) < 3:
        raise ProblemParseError("polygon: need a list of at least 3 vertices")
    pairs = []
    for idx, pair in enumerate(raw_poly):
        if not isinstance(pair, list) or len(pair) != 2:
            raise ProblemParseError(f"polygon[{idx}]: expected [x, y]")
        pairs.append((
            _parse_rational(pair[0], f"polygon[{idx}].x"),
            _parse_rational(pair[1], f"polygon[{idx}].y"),
        ))
    try:
        polygon = Polygon.from_pairs(pairs)
    except ValueError as exc:
        raise ProblemParseError(f"polygon: {exc}")

    raw_type = data["type"]
    if not isinstance(raw_type, dict):
        raise ProblemParseError("type: expected an object")
    type_spec: Union[CombinatorialType, EnumerateDirective]
    if "enumerate" in raw_type:
        spec = raw_type["enumerate"]
        if set(raw_type) != {"enumerate"} or not isinstance(spec, dict) \
                or set(spec) != {"n", "i"}:
            raise ProblemParseError(
                'type.enumerate: expected {"n": ..., "i": ...}')
        type_spec = EnumerateDirective(n=int(spec["n"]), i=int(spec["i"]))
        if type_spec.n != polygon.n:
            raise ProblemParseError(
                f"type.enumerate.n = {type_spec.n} but polygon has "
                f"{polygon.n} vertices")
    else:
        for key in ("n", "vertices", "faces"):
            if key not in raw_type:
                raise ProblemParseError(f"type.{key}: missing")
        faces = []
        for idx, f in enumerate(raw_type["faces"]):
            if not isinstance(f, list) or len(f) != 3:
                raise ProblemParseError(
                    f"type.faces[{idx}]: expected a triple")
            faces.append(tuple(int(v) for v in f))
        type_spec = CombinatorialType(
            n=int(raw_type["n"]), num_vertices=int(raw_type["vertices"]),
            faces=tuple(faces))
        problems = type_spec.validate()
        if problems:
            raise ProblemParseError(f"type: {problems[0]}")
        if type_spec.n != polygon.n:
            raise ProblemParseError(
                f"type.n = {type_spec.n} but polygon has {polygon.n} vertices")

    raw_areas = data["areas"]
    areas_spec: Union[Tuple[Fraction, ...], str]
    if isinstance(raw_areas, dict):
        if raw_areas != {"equal": True}:
            raise ProblemParseError('areas: object form must be {"equal": true}')
        areas_spec = "equal"
    elif isinstance(raw_areas, list):
        if isinstance(type_spec, EnumerateDirective):
            raise ProblemParseError(
                "areas: explicit list requires an inline type (face order "
                "is undefined under enumerate)")
        if len(raw_areas) != len(type_spec.faces):
            raise ProblemParseError(
                f"areas: {len(raw_areas)} entries for "
                f"{len(type_spec.faces)} faces")
        areas_spec = tuple(
            _parse_rational(v, f"areas[{i}]") for i, v in enumerate(raw_areas))
    else:
        raise ProblemParseError("areas: expected a list or {\"equal\": true}")

    square_faces: Optional[Tuple[Face, ...]] = None
    if "square_faces" in data:
        if isinstance(type_spec, EnumerateDirective):
            raise ProblemParseError("square_faces requires an inline type")
        raw_sq = data["square_faces"]
        if not isinstance(raw_sq, list):
            raise ProblemParseError("square_faces: expected a list of triples")
        sq_faces = []
        known = set(type_spec.faces)
        for idx, f in enumerate(raw_sq):
            if not isinstance(f, list) or len(f) != 3:
                raise ProblemParseError(
                    f"square_faces[{idx}]: expected a triple")
            face = _normalize_face(tuple(int(v) for v in f))
            if face not in known:
                raise ProblemParseError(
                    f"square_faces[{idx}]: {face} is not a face of the type")
            sq_faces.append(face)
        square_faces = tuple(sq_faces)

    return ProblemFile(polygon=polygon, type_spec=type_spec,
                       areas_spec=areas_spec, square_faces=square_faces)


def serialize_problem(problem: ProblemFile) -> dict:
    out: dict = {
        "polygon": [[str(x), str(y)] for x, y in problem.polygon.vertices],
    }
    if isinstance(problem.type_spec, EnumerateDirective):
        out["type"] = {"enumerate": {"n": problem.type_spec.n,
                                     "i": problem.type_spec.i}}
    else:
        out["type"] = {
            "n": problem.type_spec.n,
            "vertices": problem.type_spec.num_vertices,
            "faces": [list(f) for f in problem.type_spec.faces],
        }
    if problem.areas_spec == "equal":
        out["areas"] = {"equal": True}
    else:
        out["areas"] = [str(a) for a in problem.areas_spec]
    if problem.square_faces is not None:
        out["square_faces"] = [list(f) for f in problem.square_faces]
    return out


def load_problem(path: str) -> ProblemFile:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            data = json.load(fh)
    except OSError as exc:
        raise ProblemParseError(f"cannot read {path}: {exc}")
    except json.JSONDecodeError as exc:
        raise ProblemParseError(f"{path}: invalid JSON: {exc}")
    return parse_problem(data)


# ---------------------------------------------------------------------------
# solving and reporting
# ---------------------------------------------------------------------------

def _instances(problem: ProblemFile, config: Config):
    if isinstance(problem.type_spec, EnumerateDirective):
        if problem.type_spec.i > config.max_interior:
            raise ProblemParseError(
                f"enumerate.i = {problem.type_spec.i} exceeds --max-i "
                f"{config.max_interior}")
        types = enumerate_types(problem.type_spec.n, problem.type_spec.i,
                                cap=config.enumerate_cap)
    else:
        types = [problem.type_spec]
    for ctype in types:
        if problem.areas_spec == "equal":
            areas = AreaAssignment.equal(ctype, problem.polygon)
        else:
            areas = AreaAssignment.from_list(ctype, problem.areas_spec)
        yield ctype, areas


def _strategy_for(problem: ProblemFile, ctype: CombinatorialType):
    if problem.square_faces is None:
        return "greedy"
    system = build_system(
        ctype, problem.polygon,
        AreaAssignment.equal(ctype, problem.polygon)
        if problem.areas_spec == "equal"
        else AreaAssignment.from_list(ctype, problem.areas_spec))
    indices = []
    for face in problem.square_faces:
        if face not in system.poly_faces:
            raise ProblemParseError(
                f"square_faces: face {face} has no unknown vertex")
        indices.append(system.poly_faces.index(face))
    return indices


def _fmt_real(x: float) -> str:
    return f"{x:.17g}"


def _fmt_complex(z: complex) -> str:
    return f"{z.real:.17g}{z.imag:+.17g}j"


def _matched_rational(x: float, cap: int = 10**6, tol: float = 1e-9) -> Optional[Fraction]:
    f = Fraction(x).limit_denominator(cap)
    if abs(float(f) - x) < tol:
        return f
    return None


def _report_solution_set(lines: List[str], sset: SolutionSet,
                         certificates: Optional[List[AlgebraicityCertificate]],
                         polygon: Polygon):
    ct = sset.ctype
    lines.append(f"  type: n={ct.n} N={ct.num_vertices} "
                 f"faces={[list(f) for f in ct.faces]}")
    lines.append(f"  areas: {[str(sset.areas.area_of(f)) for f in ct.faces]}")
    if sset.infeasible:
        lines.append(f"  infeasible: {sset.infeasible_reason}")
    c = sset.path_counts
    lines.append(
        f"  paths: total={c['total']} converged={c['converged']} "
        f"diverged={c['diverged']} failed={c['failed']}")
    if sset.system.constants_report:
        for face, res in sset.system.constants_report:
            lines.append(f"  constant face {list(face)}: residual {res}")
    for warning in sset.warnings:
        lines.append(f"  warning: {warning}")
    lines.append(f"  solutions: {len(sset.solutions)} "
                 f"({len(sset.geometric_solutions)} geometric)")
    for idx, sol in enumerate(sset.solutions):
        kind = []
        kind.append("real" if sol.is_real else "complex")
        if sol.is_geometric:
            kind.append("geometric")
        iso = "isolated" if sol.isolation.isolated else \
            f"rank {sol.isolation.rank}/{sol.isolation.required}"
        lines.append(f"  solution {idx}: {' '.join(kind)}, {iso}, "
                     f"residual {sol.residual:.3e}")
        for v in sorted(sol.coordinates):
            x, y = sol.coordinates[v]
            if sol.is_real:
                rx = _matched_rational(x.real)
                ry = _matched_rational(y.real)
                rat = ""
                if rx is not None and ry is not None:
                    rat = f"  [{rx}, {ry}]"
                lines.append(f"    v{v} = ({_fmt_real(x.real)}, "
                             f"{_fmt_real(y.real)}){rat}")
            else:
                lines.append(f"    v{v} = ({_fmt_complex(x)}, {_fmt_complex(y)})")
        if certificates is not None and idx < len(certificates):
            for coord in certificates[idx].coordinates:
                status = "matched" if coord.matched else "UNMATCHED"
                lines.append(
                    f"    certificate {coord.variable}: "
                    f"{coord.polynomial} ({status}, |p(value)| = "
                    f"{coord.residual:.3e})")
    if sset.divergences:
        lines.append(f"  divergences: {len(sset.divergences)}")
        for p in sset.divergences:
            limits = []
            for v in sorted(p.projective_limits):
                pp = p.projective_limits[v]
                limits.append(
                    f"v{v}=[{_fmt_complex(complex(pp.x))}:"
                    f"{_fmt_complex(complex(pp.y))}:{_fmt_complex(complex(pp.z))}]")
            lines.append(f"    path {p.start_index}: t_final="
                         f"{_fmt_real(p.t_final)} {' '.join(limits)}")
    else:
        lines.append("  divergences: none")


def _solve_problem(problem: ProblemFile, config: Config,
                   do_certify: bool) -> Tuple[List[str], List[SolutionSet]]:
    lines: List[str] = []
    results: List[SolutionSet] = []
    lines.append(f"seed: {config.seed}")
    lines.append(f"polygon: {[[str(x), str(y)] for x, y in problem.polygon.vertices]}")
    lines.append(f"polygon area: {problem.polygon.area()}")
    for index, (ctype, areas) in enumerate(_instances(problem, config)):
        if ctype.interior_count > config.max_interior:
            lines.append(f"instance {index}: skipped "
                         f"(i={ctype.interior_count} > max-i)")
            continue
        strategy = _strategy_for(problem, ctype)
        sset = solve(ctype, problem.polygon, areas, config, strategy)
        certificates = None
        if do_certify and sset.solutions:
            if ctype.interior_count <= config.certify_max_interior:
                try:
                    certificates = certify(sset)
                except EliminationError as exc:
                    sset.warnings.append(f"certification failed: {exc}")
            else:
                sset.warnings.append(
                    f"certification skipped: i={ctype.interior_count} exceeds "
                    f"cap {config.certify_max_interior}")
        lines.append(f"instance {index}:")
        _report_solution_set(lines, sset, certificates, problem.polygon)
        results.append(sset)
    total_geo = sum(len(s.geometric_solutions) for s in results)
    lines.append(f"total geometric solutions: {total_geo}")
    return lines, results


def _exit_code(results: Sequence[SolutionSet]) -> int:
    if results and all(s.infeasible for s in results):
        return EXIT_INFEASIBLE
    if any(s.path_counts["failed"] for s in results):
        return EXIT_PATH_FAILURES
    return EXIT_OK


def _emit(lines: List[str], output: Optional[str]):
    text = "\n".join(lines) + "\n"
    if output:
        with open(output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------

def cmd_solve(args) -> int:
    problem = load_problem(args.file)
    config = _config_from_args(args)
    lines, results = _solve_problem(problem, config, args.certify)
    _emit(lines, args.output)
    return _exit_code(results)


def cmd_render(args) -> int:
    problem = load_problem(args.file)
    config = _config_from_args(args)
    _, results = _solve_problem(problem, config, False)
    geometric = [(sset, sol) for sset in results
                 for sol in sset.solutions if sol.is_geometric]
    if args.solution < 0 or args.solution >= len(geometric):
        available = len(geometric)
        sys.stderr.write(
            f"error: solution index {args.solution} out of range: "
            f"{available} geometric solution(s) available\n")
        return 1
    sset, sol = geometric[args.solution]
    svg = render_solution_svg(
        sset.ctype, sset.polygon, sset.areas, sol.real_coordinates())
    with open(args.out, "w", encoding="utf-8") as fh:
        fh.write(svg)
    return EXIT_OK


def cmd_inspect(args) -> int:
    problem = load_problem(args.file)
    config = _config_from_args(args)
    lines, results = _solve_problem(problem, config, False)
    lines.append("degeneration reports:")
    any_divergence = False
    for sset in results:
        for path in sset.divergences:
            any_divergence = True
            report = degen_inspect(sset.ctype, sset.areas, path,
                                   sset.polygon, config)
            lines.append(f"  path {path.start_index}:")
            for v in sorted(report.points_at_infinity):
                pp = report.points_at_infinity[v]
                lines.append(
                    f"    at infinity: v{v} limit "
                    f"[{_fmt_complex(complex(pp.x))}:"
                    f"{_fmt_complex(complex(pp.y))}:"
                    f"{_fmt_complex(complex(pp.z))}]")
            lines.append(f"    H vertices: {sorted(report.h_vertices)}")
            for rec in report.faces:
                tag = "G-face" if rec.is_g_face else "merged"
                dev = "" if rec.collinearity_deviation is None else \
                    f" collinearity-deviation {rec.collinearity_deviation:.3e}"
                lines.append(
                    f"    face {list(rec.walk)} ({tag}): S_f = "
                    f"{rec.prescribed_area}, S'_f = "
                    f"{_fmt_complex(rec.limit_area)}{dev}")
            audit = area_sum_audit(report, sset.polygon)
            lines.append(
                f"    area sums: prescribed {audit.sum_prescribed}, limit "
                f"{_fmt_complex(audit.sum_limit)}, polygon "
                f"{audit.polygon_area}, defect {_fmt_real(audit.defect)}")
            if audit.near_solution:
                lines.append(
                    "    note: defect ~ 0, likely a near-solution the "
                    "tracker truncated early")
            for warning in report.warnings:
                lines.append(f"    warning: {warning}")
    if not any_divergence:
        lines.append("  none")
    _emit(lines, args.output)
    return _exit_code(results)


def cmd_enumerate_types(args) -> int:
    types = enumerate_types(args.n, args.i)
    lines = [f"types with n={args.n}, i={args.i}: {len(types)}"]
    for idx, t in enumerate(types):
        lines.append(f"type {idx}: N={t.num_vertices} "
                     f"faces={[list(f) for f in t.faces]}")
    _emit(lines, args.output)
    return EXIT_OK


# ---------------------------------------------------------------------------
# argument plumbing
# ---------------------------------------------------------------------------

_TOL_FIELDS = [f.name for f in dc_fields(Config)
               if isinstance(f.default, float)]


def _add_common(p: argparse.ArgumentParser):
    p.add_argument("--seed", type=int, default=0,
                   help="seed for gamma and all sampling (default 0)")
    p.add_argument("--max-i", type=int, default=DEFAULT_CONFIG.max_interior,
                   help="largest interior-vertex count to solve")
    p.add_argument("--output", default=None, help="write report to file")
    for name in _TOL_FIELDS:
        p.add_argument(f"--tol-{name.replace('_', '-')}",
                       dest=f"tol_{name}", type=float, default=None,
                       help=f"override {name} (default {getattr(DEFAULT_CONFIG, name):g})")


def _config_from_args(args) -> Config:
    overrides = {"seed": args.seed, "max_interior": args.max_i}
    for name in _TOL_FIELDS:
        value = getattr(args, f"tol_{name}", None)
        if value is not None:
            overrides[name] = value
    return DEFAULT_CONFIG.with_overrides(**overrides)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="triarea",
        description="Enumerate triangulations of a polygon with prescribed "
                    "face areas")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", help="solve a problem file")
    p.add_argument("file")
    p.add_argument("--certify", action="store_true",
                   help="attach exact algebraicity certificates (i <= 2)")
    _add_common(p)
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("render", help="render a geometric solution as SVG")
    p.add_argument("file")
    p.add_argument("--solution", type=int, default=0,
                   help="index into the geometric solutions (default 0)")
    p.add_argument("--out", required=True, help="output SVG path")
    _add_common(p)
    p.set_defaults(func=cmd_render)

    p = sub.add_parser("inspect", help="solve and analyze divergent paths")
    p.add_argument("file")
    _add_common(p)
    p.set_defaults(func=cmd_inspect)

    p = sub.add_parser("enumerate-types",
                       help="list combinatorial types for (n, i)")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--i", type=int, required=True)
    p.add_argument("--output", default=None)
    p.set_defaults(func=cmd_enumerate_types)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ProblemParseError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_PARSE


if __name__ == "__main__":
    sys.exit(main())
