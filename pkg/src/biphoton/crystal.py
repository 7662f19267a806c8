"""Birefringent nonlinear crystal: dispersion, phase mismatch, crystal function.

Type-I, negative uniaxial: the pump is extraordinary, signal and idler are
ordinary.  Angles are in radians, lengths in metres and wavelengths in metres
(the Sellmeier data is in micrometres and converted on evaluation).
"""
import json
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

import numpy as np
from scipy.constants import c as C_LIGHT

from .errors import DomainError, NonDegenerateError, PhaseMatchingError


@dataclass(frozen=True)
class Material:
    """Two-polarisation Sellmeier model ``n^2 = A + B/(lam^2 - C) - D lam^2`` (lam in um)."""

    name: str
    sellmeier_o: tuple
    sellmeier_e: tuple
    lambda_um_range: tuple = (0.4, 2.0)

    def __post_init__(self):
        for key in ("sellmeier_o", "sellmeier_e"):
            coeffs = tuple(float(v) for v in getattr(self, key))
            if len(coeffs) != 4:
                raise ValueError(f"{key} needs four coefficients (A, B, C, D), got {len(coeffs)}")
            object.__setattr__(self, key, coeffs)
        lo, hi = (float(v) for v in self.lambda_um_range)
        if not 0 < lo < hi:
            raise ValueError(f"bad lambda_um_range {self.lambda_um_range}")
        object.__setattr__(self, "lambda_um_range", (lo, hi))

    def _check(self, wavelength):
        lam_um = np.asarray(wavelength, dtype=float) * 1e6
        lo, hi = self.lambda_um_range
        if np.any(lam_um < lo * (1 - 1e-12)) or np.any(lam_um > hi * (1 + 1e-12)):
            raise DomainError(
                f"wavelength outside the {self.name} Sellmeier window "
                f"[{lo * 1e3:g} nm, {hi * 1e3:g} nm]: got {np.min(lam_um) * 1e3:g}-{np.max(lam_um) * 1e3:g} nm")
        return lam_um

    @staticmethod
    def _eval(coeffs, lam_um):
        a, b, cc, d = coeffs
        l2 = lam_um * lam_um
        return np.sqrt(a + b / (l2 - cc) - d * l2)

    def n_o(self, wavelength):
        return self._eval(self.sellmeier_o, self._check(wavelength))

    def n_e(self, wavelength):
        """Principal extraordinary index (propagation normal to the optic axis)."""
        return self._eval(self.sellmeier_e, self._check(wavelength))

    def to_dict(self):
        return {"name": self.name, "sellmeier_o": list(self.sellmeier_o),
                "sellmeier_e": list(self.sellmeier_e),
                "lambda_um_range": list(self.lambda_um_range)}


def load_material(source="bbo"):
    """Load a material from a JSON file path or a bundled name (``"bbo"``)."""
    path = Path(str(source))
    if path.suffix.lower() == ".json" or path.exists():
        text = path.read_text()
    else:
        try:
            text = resources.files("biphoton.materials").joinpath(f"{str(source).lower()}.json").read_text()
        except FileNotFoundError:
            raise ValueError(f"unknown material {source!r}") from None
    data = json.loads(text)
    missing = {"name", "sellmeier_o", "sellmeier_e"} - set(data)
    if missing:
        raise ValueError(f"material file lacks {sorted(missing)}")
    return Material(name=data["name"], sellmeier_o=data["sellmeier_o"],
                    sellmeier_e=data["sellmeier_e"],
                    lambda_um_range=data.get("lambda_um_range", (0.4, 2.0)))


BBO = load_material("bbo")


@dataclass(frozen=True)
class CrystalSpec:
    thickness: float
    cut_angle: float
    material: Material = field(default=BBO)

    def __post_init__(self):
        if not self.thickness > 0:
            raise DomainError(f"crystal thickness must be positive, got {self.thickness}")
        if not 0 < self.cut_angle < np.pi / 2:
            raise DomainError(f"cut angle must lie in (0, pi/2) rad, got {self.cut_angle}")

    def with_cut_angle(self, angle):
        return CrystalSpec(self.thickness, angle, self.material)

    def with_thickness(self, thickness):
        return CrystalSpec(thickness, self.cut_angle, self.material)


def wavelength_of(omega):
    return 2 * np.pi * C_LIGHT / np.asarray(omega, dtype=float)


def index_ordinary(wavelength, spec):
    return spec.material.n_o(wavelength)


def index_extraordinary(wavelength, theta, spec):
    """Extraordinary index at angle ``theta`` from the optic axis (index ellipsoid)."""
    theta = np.asarray(theta, dtype=float)
    if np.any(theta < 0) or np.any(theta > np.pi / 2 + 1e-15):
        raise DomainError(f"propagation angle must lie in [0, pi/2], got {theta}")
    no = spec.material.n_o(wavelength)
    ne = spec.material.n_e(wavelength)
    return 1.0 / np.sqrt((np.cos(theta) / no) ** 2 + (np.sin(theta) / ne) ** 2)


def _longitudinal(k, q, label):
    """r = sqrt(k^2 - q^2) written as k - q^2/(k + r) to keep precision for q << k."""
    q2 = q * q
    disc = k * k - q2
    if np.any(disc < 0):
        raise DomainError(f"evanescent {label} component: |q| exceeds n*omega/c; "
                          "restrict the transverse integration domain")
    return q2 / (k + np.sqrt(disc))


def delta_r(q_s, q_i, omega_s, pump, spec):
    """Longitudinal phase mismatch ``r_p - r_s - r_i`` in rad/m.

    The pump index is taken at the fixed cut angle for every transverse
    component (walk-off and pump-tilt corrections neglected).
    """
    q_s = np.asarray(q_s, dtype=float)
    q_i = np.asarray(q_i, dtype=float)
    omega_s = np.asarray(omega_s, dtype=float)
    omega_p = pump.omega
    omega_i = omega_p - omega_s
    k_p = index_extraordinary(pump.wavelength, spec.cut_angle, spec) * omega_p / C_LIGHT
    k_s = index_ordinary(wavelength_of(omega_s), spec) * omega_s / C_LIGHT
    k_i = index_ordinary(wavelength_of(omega_i), spec) * omega_i / C_LIGHT
    dk = k_p - k_s - k_i
    return (dk - _longitudinal(k_p, q_s + q_i, "pump")
            + _longitudinal(k_s, q_s, "signal") + _longitudinal(k_i, q_i, "idler"))


def zeta_of(dr, thickness):
    """Crystal function for a given mismatch: equals the integral of exp(-j dr z) over [0, thickness]."""
    dr = np.asarray(dr, dtype=float)
    return thickness * np.sinc(thickness * dr / (2 * np.pi)) * np.exp(-0.5j * thickness * dr)


def zeta(q_s, q_i, omega_s, pump, spec):
    return zeta_of(delta_r(q_s, q_i, omega_s, pump, spec), spec.thickness)


def collinear_cut_angle(pump, spec, tol=1e-13):
    """Cut angle giving degenerate collinear type-I matching, by bisection on [0, pi/2].

    Bisection is carried to ``tol`` (default near machine precision) so the
    matched indices agree to ~1e-13.
    """
    lam_p = pump.wavelength
    target = index_ordinary(2 * lam_p, spec)
    f = lambda th: float(index_extraordinary(lam_p, th, spec) - target)
    lo, hi = 0.0, np.pi / 2
    f_lo, f_hi = f(lo), f(hi)
    if not (f_lo > 0 > f_hi):
        raise PhaseMatchingError(
            f"no collinear phase matching for {spec.material.name} at pump {lam_p * 1e9:g} nm: "
            f"need n_e({lam_p * 1e9:g} nm) < n_o({2 * lam_p * 1e9:g} nm) < n_o({lam_p * 1e9:g} nm)")
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if f(mid) > 0:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def equivalent_thickness(spec, pump):
    return spec.thickness / float(index_ordinary(pump.degenerate_wavelength, spec))


def delta_n(spec, pump):
    """``n_o(lambda_o) - n_e(lambda_p, theta_cut)``; zero at collinear cut, positive beyond."""
    return float(index_ordinary(pump.degenerate_wavelength, spec)
                 - index_extraordinary(pump.wavelength, spec.cut_angle, spec))


# index differences below this are rounding residue of the collinear bisection
DN_ROUNDING = 1e-12


def emission_cone_angle(spec, pump, dn=None):
    """Half-angle of the degenerate emission cone outside the crystal (rad)."""
    if dn is None:
        dn = delta_n(spec, pump)
    if -DN_ROUNDING <= dn < 0:
        dn = 0.0
    if dn < 0:
        raise NonDegenerateError(
            f"non-degenerate regime: delta_n = {dn:.3e} < 0 at cut angle "
            f"{np.degrees(spec.cut_angle):.4f} deg; degenerate emission is not phase matched")
    n_o = float(index_ordinary(pump.degenerate_wavelength, spec))
    return float(np.sqrt(2 * n_o * dn + pump.degenerate_wavelength / equivalent_thickness(spec, pump)))
