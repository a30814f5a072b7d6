"""Gaussian-state simulator for circular chi(2) waveguide arrays."""

from ._cvring import (
    VLF_THRESHOLD,
    ArrayConfig,
    angle_scan,
    apply_loss,
    closed_form_covariance,
    determinant,
    dft_matrix,
    drift_matrix,
    eigenvalues,
    full_inseparability,
    min_physical_eigenvalue,
    orthonormality_residual,
    propagated_covariance,
    propagator,
    validate,
    vlf_pair,
    z_grid,
)

__all__ = [
    "VLF_THRESHOLD",
    "ArrayConfig",
    "angle_scan",
    "apply_loss",
    "closed_form_covariance",
    "determinant",
    "dft_matrix",
    "drift_matrix",
    "eigenvalues",
    "full_inseparability",
    "min_physical_eigenvalue",
    "orthonormality_residual",
    "propagated_covariance",
    "propagator",
    "validate",
    "vlf_pair",
    "z_grid",
]
