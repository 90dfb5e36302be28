"""Simulation and spectral estimation for long-range dependent
functional time series on the 2-sphere.

The package covers the full pipeline: harmonic geometry, spectral
models with per-scale memory profiles, exact-in-law simulation,
frequency-domain summaries, contrast-based memory estimation, a mixed
smoothed/parametric density estimator, and reproducible Monte-Carlo
experiment drivers with CSV artifacts.
"""

from .contrast import (
    ContrastConfig,
    ContrastReport,
    ContrastTables,
    empirical_contrast,
    identity_residual,
    normalizer,
    population_loss,
    precompute_tables,
    select_theta,
    upsilon,
    write_contrast_csv,
)
from .errors import (
    ConfigurationError,
    DataError,
    InvalidModelError,
    InvalidParameterError,
    MemoryBudgetError,
    SingularFrequencyError,
    TableKindError,
)
from .experiments import (
    ExperimentPlan,
    ReplicationSummary,
    empirical_probabilities,
    histogram_edges,
    l1_error,
    run_plan,
    temporal_mean_abs_error,
)
from .harmonics import (
    HarmonicScale,
    ZonalField,
    equiangular_grid,
    geodesic_cos,
    jacobi_normalized,
    legendre,
    legendre_table,
    point_angles,
    random_pole,
    reconstruct_field,
    sphere_point,
    sphere_surface_area,
    subspace_dimension,
    validate_unit,
    zonal_kernel,
)
from .mixed_estimator import MixedEstimate, estimate_mixed, write_mixed_csv
from .periodogram import (
    SmoothingWindow,
    SpectralTable,
    fdft,
    fourier_grid,
    integrated_periodogram,
    model_table,
    periodogram_scale,
    smoothed_estimator,
    write_spectral_csv,
)
from .scenarios import Scenario, load_scenario, paper_scale, preset, preset_names
from .simulator import (
    FunctionalSample,
    SimConfig,
    frac_ma_coeffs,
    simulate_sample,
    simulate_scale,
    write_sample_csv,
    write_snapshot_csv,
)
from .spectral_model import (
    LrdProfile,
    ModelSpec,
    SphArmaSpec,
    SummabilityReport,
    arma_srd_factor,
    autocovariance_b0,
    candidate_family,
    compact_profile,
    noncompact_profile,
    spectral_density,
    validate_summability,
)
from .streams import substream

__version__ = "0.1.0"

__all__ = [
    "ConfigurationError",
    "ContrastConfig",
    "ContrastReport",
    "ContrastTables",
    "DataError",
    "ExperimentPlan",
    "FunctionalSample",
    "HarmonicScale",
    "InvalidModelError",
    "InvalidParameterError",
    "LrdProfile",
    "MemoryBudgetError",
    "MixedEstimate",
    "ModelSpec",
    "ReplicationSummary",
    "Scenario",
    "SimConfig",
    "SingularFrequencyError",
    "SmoothingWindow",
    "SpectralTable",
    "SphArmaSpec",
    "SummabilityReport",
    "TableKindError",
    "ZonalField",
    "arma_srd_factor",
    "autocovariance_b0",
    "candidate_family",
    "compact_profile",
    "empirical_contrast",
    "empirical_probabilities",
    "equiangular_grid",
    "estimate_mixed",
    "fdft",
    "fourier_grid",
    "frac_ma_coeffs",
    "geodesic_cos",
    "histogram_edges",
    "identity_residual",
    "integrated_periodogram",
    "jacobi_normalized",
    "l1_error",
    "legendre",
    "legendre_table",
    "load_scenario",
    "model_table",
    "noncompact_profile",
    "normalizer",
    "paper_scale",
    "periodogram_scale",
    "point_angles",
    "population_loss",
    "precompute_tables",
    "preset",
    "preset_names",
    "random_pole",
    "reconstruct_field",
    "run_plan",
    "select_theta",
    "simulate_sample",
    "simulate_scale",
    "smoothed_estimator",
    "spectral_density",
    "sphere_point",
    "sphere_surface_area",
    "subspace_dimension",
    "substream",
    "temporal_mean_abs_error",
    "upsilon",
    "validate_summability",
    "validate_unit",
    "write_contrast_csv",
    "write_mixed_csv",
    "write_sample_csv",
    "write_snapshot_csv",
    "write_spectral_csv",
    "zonal_kernel",
]
