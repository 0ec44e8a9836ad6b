"""Affine Taylor expansions of plane curves and their gravity curves."""

from ._affgrav import (
    DiffPoly,
    GravitySample,
    NumCurve,
    Pipeline,
    QR2Scalar,
    Series,
    build_pipeline,
    default_deltas,
    fit_flatness,
    fixture_curve,
    gravity_samples,
    h_leading_closed_form,
    run_cli,
    straightness,
    verify,
)

__all__ = [
    "DiffPoly",
    "GravitySample",
    "NumCurve",
    "Pipeline",
    "QR2Scalar",
    "Series",
    "build_pipeline",
    "default_deltas",
    "fit_flatness",
    "fixture_curve",
    "gravity_samples",
    "h_leading_closed_form",
    "run_cli",
    "straightness",
    "verify",
]
