"""Landau-type bound states of an induced electric dipole moment.

A neutral atom or molecule with polarizability ``alpha`` moving through
crossed electric and magnetic fields behaves like a charge in a uniform
effective magnetic field.  This package computes the resulting bound-state
spectrum under an additional Kratzer well and a linear scalar potential, in
static and rotating frames: the power-series solution of the radial
equation, the discrete set of cyclotron frequencies at which it truncates
to a polynomial, the closed-form energies, and two independent numerical
oracles (a finite-difference eigensolver and a pointwise ODE-residual
check) that validate every closed form.
"""

from . import _core
from .errors import (
    ConfigError,
    DegenerateConstraint,
    DipoleLandauError,
    EmptyBracket,
    GridTooCoarse,
    NonPositiveFrequency,
    NoPositiveRoot,
    NotQuantized,
    SeriesNotConverged,
    UnsupportedLevel,
)
from .heun import (
    HeunParams,
    HeunSeries,
    RadialSolution,
    evaluate_series,
    radial_wavefunction,
    series_coefficients,
    series_for_level,
    truncated_solution,
    truncation_residual,
    truncation_residual_scan,
)
from .oracle import (
    EigenReport,
    RadialGrid,
    default_grid,
    effective_potential,
    fd_eigensolve,
    ode_residual,
)
from .params import (
    DerivedScales,
    Frame,
    SystemParams,
    chi,
    chi_at,
    cyclotron_frequency,
    effective_angular,
    effective_frequency,
    effective_frequency_at,
    heun_scales,
    scales_at,
)
from .quantize import (
    FrequencyConstraint,
    SpectrumEntry,
    allowed_frequencies,
    allowed_frequencies_n1,
    cubic_constraint_coefficients,
    default_bracket,
    energy_level,
    spectrum,
)

__version__ = "0.1.0"


def backend() -> str:
    """Active kernel backend: 'compiled' or 'python'."""
    return _core.BACKEND


__all__ = [
    "__version__",
    "backend",
    # params
    "Frame",
    "SystemParams",
    "DerivedScales",
    "cyclotron_frequency",
    "effective_frequency",
    "effective_frequency_at",
    "effective_angular",
    "heun_scales",
    "scales_at",
    "chi",
    "chi_at",
    # heun
    "HeunParams",
    "HeunSeries",
    "RadialSolution",
    "series_coefficients",
    "series_for_level",
    "truncated_solution",
    "truncation_residual",
    "truncation_residual_scan",
    "evaluate_series",
    "radial_wavefunction",
    # quantize
    "SpectrumEntry",
    "FrequencyConstraint",
    "cubic_constraint_coefficients",
    "energy_level",
    "allowed_frequencies",
    "allowed_frequencies_n1",
    "default_bracket",
    "spectrum",
    # oracle
    "RadialGrid",
    "EigenReport",
    "effective_potential",
    "default_grid",
    "fd_eigensolve",
    "ode_residual",
    # errors
    "DipoleLandauError",
    "NonPositiveFrequency",
    "UnsupportedLevel",
    "SeriesNotConverged",
    "DegenerateConstraint",
    "NoPositiveRoot",
    "EmptyBracket",
    "GridTooCoarse",
    "NotQuantized",
    "ConfigError",
]
