"""Tolerances and run parameters shared across the pipeline.

All thresholds live here so the CLI can override any of them with a
single --tol-<name> flag.
"""

from __future__ import annotations

from dataclasses import dataclass, fields, replace


@dataclass(frozen=True)
class Config:
    # reproducibility
    seed: int = 0

    # path tracking
    dt_initial: float = 1e-2
    dt_max: float = 5e-2
    dt_min: float = 1e-14
    truncation_magnitude: float = 1e8      # coordinate size that flags divergence
    corrector_tol: float = 1e-8
    newton_tol: float = 1e-12
    converged_residual: float = 1e-10

    # solution pipeline
    filter_tol: float = 1e-6               # leftover-equation filter before refinement
    full_residual_tol: float = 1e-9
    dedup_tol: float = 1e-6
    real_tol: float = 1e-9                 # max |Im| for a solution to count as real
    isolation_rank_threshold: float = 1e-8 # relative singular-value cutoff
    denominator_cap: int = 10**12          # rationalization cap for exact predicates

    # projective classification
    projective_infinity_tol: float = 1e-8  # geom-level |z| threshold
    degen_infinity_tol: float = 1e-6       # degeneration-report |z| threshold
    degen_face_area_tol: float = 1e-5
    degen_collinearity_tol: float = 1e-4
    degen_mixed_rate_factor: float = 10.0  # escape-rate ambiguity flag window

    # scope caps
    max_interior: int = 3
    certify_max_interior: int = 2
    enumerate_cap: int = 200_000           # node budget for type enumeration

    def with_overrides(self, **kwargs) -> "Config":
        return replace(self, **kwargs)


TOLERANCE_FIELDS = tuple(
    f.name for f in fields(Config)
    if f.type == "float" or isinstance(f.default, float)
)

DEFAULT_CONFIG = Config()
