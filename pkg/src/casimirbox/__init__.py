"""Thermal Casimir effect in ideal-metal rectangular boxes and between
parallel planes: renormalized free energy, force, internal energy and
entropy, in natural units with SI conversion at the CLI boundary."""

from .boxzero import (
    BoxGeometry,
    FieldKind,
    e0,
    e0_em,
    e0_force_x,
    e0_scalar,
    lattice_g,
    lattice_r,
)
from .errors import CasimirBoxError, ConvergenceError, DerivativeInstabilityError
from .plates import PlatesConfig, plates_free_energy, plates_pressure
from .specfun import CONSTANTS, bessel_k, exp_tail_bound
from .thermal import (
    EnergyBreakdown,
    SubtractionCoefficients,
    ThermalPoint,
    asymptotic_thermal,
    blackbody_density,
    entropy,
    force_x,
    free_energy,
    heat_kernel_coeffs,
    internal_energy,
    mode_frequency,
    subtraction_coeffs,
    thermal_raw,
)

__version__ = "0.1.0"

__all__ = [
    "BoxGeometry",
    "FieldKind",
    "ThermalPoint",
    "PlatesConfig",
    "EnergyBreakdown",
    "SubtractionCoefficients",
    "CasimirBoxError",
    "ConvergenceError",
    "DerivativeInstabilityError",
    "CONSTANTS",
    "bessel_k",
    "exp_tail_bound",
    "lattice_g",
    "lattice_r",
    "e0",
    "e0_scalar",
    "e0_em",
    "e0_force_x",
    "thermal_raw",
    "blackbody_density",
    "subtraction_coeffs",
    "heat_kernel_coeffs",
    "mode_frequency",
    "free_energy",
    "force_x",
    "internal_energy",
    "entropy",
    "asymptotic_thermal",
    "plates_free_energy",
    "plates_pressure",
    "__version__",
]
