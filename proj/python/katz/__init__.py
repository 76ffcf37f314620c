"""Flat sections, projector and trivialization for integrable connections
over truncated multivariate power series with exact rational coefficients."""

from ._katz import (
    Connection,
    DimensionError,
    InconsistencyError,
    InputError,
    IntegrabilityError,
    KatzError,
    ParseError,
    PrecisionError,
    Series,
    apply_D,
    apply_DJ,
    compatibility_check,
    curvature,
    eval_at_zero,
    flat_basis,
    generate_problem,
    independence_certificate,
    nakayama_expand,
    partial,
    project,
    restrict_connection,
    restrict_last,
    run_problem,
    solve_flat,
    trivialize,
)

__all__ = [
    "Connection",
    "DimensionError",
    "InconsistencyError",
    "InputError",
    "IntegrabilityError",
    "KatzError",
    "ParseError",
    "PrecisionError",
    "Series",
    "apply_D",
    "apply_DJ",
    "compatibility_check",
    "curvature",
    "eval_at_zero",
    "flat_basis",
    "generate_problem",
    "independence_certificate",
    "nakayama_expand",
    "partial",
    "project",
    "restrict_connection",
    "restrict_last",
    "run_problem",
    "solve_flat",
    "trivialize",
]
