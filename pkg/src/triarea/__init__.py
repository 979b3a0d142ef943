"""Enumerate triangulations of a rational polygon with prescribed
face areas via polynomial homotopy continuation, with exact
algebraicity certificates and degeneration diagnostics."""

from .combo import (CombinatorialType, EnumerationCapExceeded, Face,
                    cone_type, enumerate_types, fan_type)
from .config import Config, DEFAULT_CONFIG
from .degen import (AreaSumAudit, DegenerationReport, FaceRecord,
                    InspectionError, area_sum_audit, collinearity_deviation)
from .degen import inspect as inspect_degeneration
from .exact import (AlgebraicityCertificate, CoordinateCertificate,
                    EliminationError, certify, eliminate,
                    sylvester_resultant, to_integer_coeffs)
from .geom import Polygon, ProjectivePoint, polygon_area, triangle_area
from .homotopy import (HomotopyProblem, PathResult, SquareSelectionError,
                       make_square_subsystem, newton_refine, track_all)
from .poly import (AreaAssignment, PolynomialSystem, SparsePoly,
                   build_system, face_area_sum, face_determinant)
from .render import render_solution_svg
from .solve import (IsolationReport, RoundtripReport, SamplingError, Solution,
                    SolutionSet, check_geometric, induced_areas,
                    isolation_check, roundtrip_oracle,
                    sample_geometric_configuration, solve)

__version__ = "1.0.0"

__all__ = [
    "AlgebraicityCertificate", "AreaAssignment", "AreaSumAudit",
    "CombinatorialType", "Config", "CoordinateCertificate", "DEFAULT_CONFIG",
    "DegenerationReport", "EliminationError", "EnumerationCapExceeded",
    "Face", "FaceRecord", "HomotopyProblem", "InspectionError",
    "IsolationReport", "PathResult", "Polygon", "PolynomialSystem",
    "ProjectivePoint", "RoundtripReport", "SamplingError", "Solution",
    "SolutionSet", "SparsePoly", "SquareSelectionError", "area_sum_audit",
    "build_system", "certify", "check_geometric", "collinearity_deviation",
    "cone_type", "eliminate", "enumerate_types", "face_area_sum",
    "face_determinant", "fan_type", "induced_areas", "inspect_degeneration",
    "isolation_check", "make_square_subsystem", "newton_refine",
    "polygon_area", "render_solution_svg", "roundtrip_oracle",
    "sample_geometric_configuration", "solve", "sylvester_resultant",
    "to_integer_coeffs", "track_all", "triangle_area",
]
