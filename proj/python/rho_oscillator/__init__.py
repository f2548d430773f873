"""Relativistic harmonic oscillator family in natural units (hbar = c = 1)."""

from ._rho import (
    ConvergenceError,
    ForbiddenEnergy,
    HorizonApproach,
    InvalidArgument,
    ModelParameters,
    NotNormalizable,
    OpenMotion,
    OutsideDomain,
    QuantumLevel,
    RhoError,
    amplitude,
    classify_motion,
    continuum_threshold,
    effective_frequency,
    energy_level,
    hermite,
    hyp2f1,
    integrate_geodesic,
    max_principal_number,
    numeric_energies,
    spectrum,
    trajectory,
    wavefunction,
)

__all__ = [
    "ConvergenceError",
    "ForbiddenEnergy",
    "HorizonApproach",
    "InvalidArgument",
    "ModelParameters",
    "NotNormalizable",
    "OpenMotion",
    "OutsideDomain",
    "QuantumLevel",
    "RhoError",
    "amplitude",
    "classify_motion",
    "continuum_threshold",
    "effective_frequency",
    "energy_level",
    "hermite",
    "hyp2f1",
    "integrate_geodesic",
    "max_principal_number",
    "numeric_energies",
    "spectrum",
    "trajectory",
    "wavefunction",
]
