"""Thin-lens geometry, pump and filter descriptions, and transfer functions.

All transfer functions are in the 1-D transverse model and are evaluated
for a plane-wave input ``exp(j q x')`` at the object (crystal) plane.
Global proportionality constants are 1.
"""
import math
from dataclasses import dataclass
from typing import Optional

import numpy as np
from scipy.constants import c as C_LIGHT
from scipy.special import fresnel

from .errors import DomainError, GeometryError
from .kernels import quadratic_phase_sum
from .quadrature import QuadratureSpec, composite_nodes, integrate_1d


@dataclass(frozen=True)
class PumpSpec:
    """Monochromatic pump; ``width=None`` is a plane wave, otherwise a Gaussian ``exp(-x^2/b^2)``."""

    wavelength: float = 532e-9
    width: Optional[float] = None

    def __post_init__(self):
        if not self.wavelength > 0:
            raise DomainError("pump wavelength must be positive")
        if self.width is not None and not self.width > 0:
            raise DomainError(f"Gaussian pump width must be positive, got {self.width}")

    @property
    def is_plane_wave(self):
        return self.width is None

    @property
    def omega(self):
        return 2 * np.pi * C_LIGHT / self.wavelength

    @property
    def degenerate_wavelength(self):
        return 2 * self.wavelength

    @property
    def omega_o(self):
        return 0.5 * self.omega

    def field(self, x):
        x = np.asarray(x, dtype=float)
        if self.is_plane_wave:
            return np.ones_like(x)
        return np.exp(-(x / self.width) ** 2)

    def angular_spectrum(self, q):
        """``int E_p(x) exp(-j q x) dx``; a plane wave has a delta spectrum and cannot be sampled."""
        if self.is_plane_wave:
            raise DomainError("a plane-wave pump has a delta angular spectrum")
        b = self.width
        return b * np.sqrt(np.pi) * np.exp(-0.25 * (np.asarray(q, dtype=float) * b) ** 2)


@dataclass(frozen=True)
class SpectralFilter:
    """Flat-top passband of full width ``bandwidth * omega_o`` centred on ``omega_o``.

    ``bandwidth == 0`` is monochromatic filtering.  ``normalization`` fixes how
    a finite band is weighted: ``"area"`` gives the band unit spectral area
    (amplitudes are averaged, so the zero-width limit is the monochromatic
    result), ``"transmission"`` gives it unit in-band transmission per unit
    fractional frequency (a fixed source density, so the amplitude grows
    with the band).
    """

    bandwidth: float = 0.0
    normalization: str = "area"

    def __post_init__(self):
        if not 0 <= self.bandwidth < 2:
            raise DomainError(f"fractional bandwidth must lie in [0, 2), got {self.bandwidth}")
        if self.normalization not in ("area", "transmission"):
            raise ValueError(f"unknown filter normalization {self.normalization!r}")

    def wavelength_width(self, degenerate_wavelength, first_order=False):
        """Wavelength span between the band edges ``omega_o (1 -+ BW/2)``.

        ``first_order=True`` gives the linearised ``lambda_o * BW``.
        """
        bw = self.bandwidth
        if first_order:
            return degenerate_wavelength * bw
        return degenerate_wavelength * bw / (1 - bw * bw / 4)


@dataclass(frozen=True)
class LensSystem:
    focal_length: float
    aperture: Optional[float] = None
    crystal_to_lens: float = 0.0
    magnification: float = 1.0

    def __post_init__(self):
        if not self.focal_length > 0:
            raise GeometryError(f"focal length must be positive, got {self.focal_length}")
        if self.aperture is not None and not self.aperture > 0:
            raise GeometryError(f"aperture must be positive, got {self.aperture}")
        if not self.magnification > 0:
            raise GeometryError("magnification must be positive")

    @property
    def f_number(self):
        if self.aperture is None:
            raise GeometryError("F-number undefined for an ideal lens without aperture")
        return self.focal_length / self.aperture

    def fresnel_number(self, wavelength):
        if self.aperture is None:
            raise GeometryError("Fresnel number undefined without aperture")
        return self.aperture ** 2 / (wavelength * self.focal_length)


@dataclass(frozen=True)
class ScaledCoords:
    U: object
    X: object
    Z: object
    z_c: float
    x_c: float


def scaled_coords(x, z, wavelength, lens):
    x = np.asarray(x, dtype=float)
    z = np.asarray(z, dtype=float)
    f = lens.focal_length
    if np.any(z <= -f):
        raise GeometryError(f"axial position must satisfy z > -f = {-f:g} m")
    fn = lens.f_number
    z_c = 2 * wavelength * fn ** 2
    x_c = 2 * wavelength * fn
    U = 1 + z / f
    return ScaledCoords(U=U, X=2 * x / x_c / U, Z=2 * z / z_c / U, z_c=z_c, x_c=x_c)


def unscale(coords, lens):
    """Recover ``(x, z)`` from ``ScaledCoords``."""
    z = coords.Z * coords.U * coords.z_c / 2
    x = coords.X * coords.U * coords.x_c / 2
    return x, z


def lens_half_angle(lens):
    if lens.aperture is None:
        raise GeometryError("lens half-angle needs a finite aperture")
    m = lens.magnification
    ratio = 1.0 if math.isinf(m) else m / (m + 1)
    return ratio / (2 * lens.f_number)


def aperture_for_ratio(delta, cone_angle, focal_length, magnification=1.0):
    """Aperture whose half-angle makes ``cone_angle / half_angle == delta``."""
    if not delta > 0:
        raise DomainError("aperture ratio must be positive")
    m = magnification
    ratio = 1.0 if math.isinf(m) else m / (m + 1)
    return 2 * focal_length * (cone_angle / delta) / ratio


def mu_parameters(lens, equivalent_thickness, degenerate_wavelength):
    """Smallness parameters of the focal-region kernel: ``(mu1, mu2, N_f)``."""
    nf = lens.fresnel_number(degenerate_wavelength)
    f = lens.focal_length
    mu1 = equivalent_thickness / f / nf
    mu2 = (equivalent_thickness / 2 + lens.crystal_to_lens) / f / nf
    return mu1, mu2, nf


def chirp_integral(c2, c1, a, b):
    """Closed form of ``int_a^b exp(-j (c2 x^2 + c1 x)) dx`` for ``c2 != 0`` (arrays broadcast)."""
    c2, c1 = np.broadcast_arrays(np.asarray(c2, dtype=float), np.asarray(c1, dtype=float))
    if np.any(c2 == 0):
        raise ValueError("chirp_integral needs a nonzero quadratic coefficient")
    s = np.sign(c2)
    m = np.abs(c2)
    x0 = c1 / (2 * c2)
    scale = np.sqrt(2 * m / np.pi)
    sa, ca = fresnel((a + x0) * scale)
    sb, cb = fresnel((b + x0) * scale)
    val = np.sqrt(np.pi / (2 * m)) * ((cb - ca) - 1j * s * (sb - sa))
    return val * np.exp(1j * c1 * c1 / (4 * c2))


def _pupil_transform(c2, c1, half_width, order=32):
    """``int_{-w}^{w} exp(-j (c2 x^2 + c1 x)) dx`` by composite Gauss-Legendre (valid for any c2)."""
    c2, c1 = np.broadcast_arrays(np.asarray(c2, dtype=float), np.asarray(c1, dtype=float))
    span = float(np.max(np.abs(c2)) * half_width ** 2 + np.max(np.abs(c1)) * half_width)
    panels = int(np.ceil(span / 4.0)) + 2
    xs, ws = composite_nodes(-half_width, half_width, panels, order)
    return quadratic_phase_sum(c2.ravel(), c1.ravel(), xs, ws.astype(complex)).reshape(c2.shape)


def transfer_focal(x, z, q, wavelength, lens, d=None):
    """Focal-region transfer function for a lens of aperture D at distance d from the crystal."""
    if lens.aperture is None:
        raise GeometryError("focal transfer function needs a finite aperture")
    d = lens.crystal_to_lens if d is None else d
    x, z, q = np.broadcast_arrays(*(np.asarray(v, dtype=float) for v in (x, z, q)))
    f = lens.focal_length
    if np.any(z <= -f):
        raise GeometryError(f"axial position must satisfy z > -f = {-f:g} m")
    U = 1 + z / f
    lam_fu = wavelength * f * U
    shifted = q - 2 * np.pi * x / lam_fu
    p_g = _pupil_transform(np.pi * z / (wavelength * U * f * f), shifted, lens.aperture / 2)
    return (np.exp(1j * np.pi * x * x / lam_fu) * np.exp(-1j * wavelength * d * q * q / (4 * np.pi))
            * p_g / np.sqrt(lam_fu))


def transfer_imaging_ideal(x, z, q, wavelength, lens):
    """Unit-magnification imaging without aperture, near the image plane (pure phase)."""
    x, z, q = np.broadcast_arrays(*(np.asarray(v, dtype=float) for v in (x, z, q)))
    f = lens.focal_length
    if np.any(z <= -f):
        raise GeometryError(f"axial position must satisfy z > -f = {-f:g} m")
    U = 1 + z / f
    return (np.exp(-1j * wavelength * z * q * q / (4 * np.pi * U)) * np.exp(-1j * x * q / U)
            * np.exp(1j * np.pi * x * x * (1 + 1 / U) / (2 * wavelength * f)))


def _aperture_terms(x, z, q, wavelength, lens):
    f = lens.focal_length
    k = 2 * np.pi / wavelength
    dist = 2 * f + z
    a_coef = k * (f + z) / (2 * f * dist)
    b_coef = q - k * x / dist
    pre = (np.exp(-1j * q * q * f / k) * np.exp(1j * k * x * x / (2 * dist))
           / np.sqrt(1j * wavelength * dist))
    return a_coef, b_coef, pre


def transfer_imaging_aperture(x, z, q, wavelength, lens):
    """2f-2f imaging through a rectangular pupil of width D.

    Object-plane plane wave, Fresnel propagation over 2f, pupil and thin-lens
    phase, Fresnel propagation over 2f + z.  The remaining lens-plane integral
    is a truncated Gaussian chirp and is evaluated in closed form with
    Fresnel integrals.  As D grows this tends to ``U**-0.5`` times the ideal
    transfer function up to a constant phase.
    """
    if lens.aperture is None:
        raise GeometryError("aperture transfer function needs a finite aperture")
    x, z, q = np.broadcast_arrays(*(np.asarray(v, dtype=float) for v in (x, z, q)))
    if np.any(z <= -lens.focal_length):
        raise GeometryError("axial position must satisfy z > -f")
    a_coef, b_coef, pre = _aperture_terms(x, z, q, wavelength, lens)
    half = lens.aperture / 2
    return pre * chirp_integral(a_coef, -b_coef, -half, half)


def transfer_imaging_aperture_quad(x, z, q, wavelength, lens, spec=None):
    """Same as :func:`transfer_imaging_aperture`, by adaptive quadrature over the lens plane."""
    spec = spec or QuadratureSpec(rtol=1e-9, initial_panels=64)
    x, z, q = np.broadcast_arrays(*(np.asarray(v, dtype=float) for v in (x, z, q)))
    a_coef, b_coef, pre = _aperture_terms(x, z, q, wavelength, lens)
    a_flat, b_flat = a_coef.ravel(), b_coef.ravel()

    def integrand(xl):
        return np.exp(-1j * (a_flat[:, None] * xl * xl - b_flat[:, None] * xl))

    half = lens.aperture / 2
    res = integrate_1d(integrand, -half, half, spec)
    return pre * np.asarray(res.value).reshape(a_coef.shape)
