"""Exactly-n ball search and unit-sphere separation checks in finite-dimensional normed spaces."""

from ._core import (
    BallCertificate,
    BallQueryResult,
    BudgetError,
    Custom3DParams,
    HorizonError,
    ImpossibilityCertificate,
    IndexedPointSet,
    NormSpec,
    PointSet,
    ScanReport,
    SearchConfig,
    SearchStep,
    ValidationResult,
    Witness,
    boundary_scale,
    certify_no_witness_linf,
    edge_tangent_slope,
    find_ball_growth,
    find_ball_sorted,
    find_witness,
    is_flat_pair,
    lattice_window,
    load_points,
    norm_eval,
    sample_unit_sphere,
    save_points,
    sprime_scan_facet,
    sprime_scan_random,
    strict_convexity_probe,
    surface_height,
    surface_mesh_csv,
    validate_certificate,
)

__all__ = [
    "BallCertificate",
    "BallQueryResult",
    "BudgetError",
    "Custom3DParams",
    "HorizonError",
    "ImpossibilityCertificate",
    "IndexedPointSet",
    "NormSpec",
    "PointSet",
    "ScanReport",
    "SearchConfig",
    "SearchStep",
    "ValidationResult",
    "Witness",
    "boundary_scale",
    "certify_no_witness_linf",
    "edge_tangent_slope",
    "find_ball_growth",
    "find_ball_sorted",
    "find_witness",
    "is_flat_pair",
    "lattice_window",
    "load_points",
    "norm_eval",
    "sample_unit_sphere",
    "save_points",
    "sprime_scan_facet",
    "sprime_scan_random",
    "strict_convexity_probe",
    "surface_height",
    "surface_mesh_csv",
    "validate_certificate",
]
