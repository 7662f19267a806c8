"""Biphoton excitation distributions from SPDC light imaged through a lens."""
from .crystal import (BBO, CrystalSpec, Material, collinear_cut_angle, delta_n,
                      emission_cone_angle, equivalent_thickness, load_material, zeta)
from .errors import (AmbiguousCurveError, BiphotonError, ConfigError, DomainError,
                     GeometryError, NonConvergenceError, NonDegenerateError,
                     PhaseMatchingError)
from .optics import LensSystem, PumpSpec, SpectralFilter
from .quadrature import QuadratureSpec, integrate_1d, integrate_2d

__all__ = [
    "BBO", "CrystalSpec", "Material", "collinear_cut_angle", "delta_n", "emission_cone_angle",
    "equivalent_thickness", "load_material", "zeta",
    "AmbiguousCurveError", "BiphotonError", "ConfigError", "DomainError", "GeometryError",
    "NonConvergenceError", "NonDegenerateError", "PhaseMatchingError",
    "LensSystem", "PumpSpec", "SpectralFilter", "QuadratureSpec", "integrate_1d", "integrate_2d",
]

__version__ = "0.1.0"
