"""Excitation distributions: classical one- and two-photon, and biphoton.

Coordinates are in metres.  Every distribution is an |amplitude|^2 in
arbitrary units; only shapes, ratios and widths are meaningful.

Biphoton curves in the image region are q-integrals of the crystal function
times the propagation phase.  The q-domain is infinite in principle; it is
truncated at ``6 * theta_SPDC * n_o * omega_o / c`` and the radius is doubled
until the curve stops changing (``truncation_rtol``, relative to the peak).
"""
import math
import warnings
from dataclasses import dataclass, field, replace

import numpy as np
from scipy.constants import c as C_LIGHT

from . import crystal as cr
from .errors import DomainError, NonConvergenceError
from .kernels import quadratic_phase_matrix
from .optics import (LensSystem, PumpSpec, SpectralFilter, chirp_integral,
                     lens_half_angle, mu_parameters, scaled_coords,
                     transfer_imaging_aperture)
from .quadrature import QuadratureSpec, integrate_1d

CONFIGURATIONS = ("focal", "imaging-ideal", "imaging-aperture",
                  "imaging-bandwidth", "imaging-pump-profile")
UNITS = ("z_c", "x_c", "l_eq", "raw")

DEFAULT_SPEC = QuadratureSpec(rtol=1e-6)
TRUNCATION_RTOL = 2e-2
Q_RANGE_FACTOR = 6.0
MAX_DOUBLINGS = 4


@dataclass
class Distribution1D:
    axis: str
    coordinates: np.ndarray
    values: np.ndarray
    normalization_unit: str = "raw"
    unit_length: float = 1.0
    metadata: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.axis not in ("axial", "transverse"):
            raise ValueError(f"axis must be 'axial' or 'transverse', got {self.axis!r}")
        if self.normalization_unit not in UNITS:
            raise ValueError(f"unknown normalization unit {self.normalization_unit!r}")
        self.coordinates = np.asarray(self.coordinates, dtype=float)
        self.values = np.asarray(self.values, dtype=float)
        if self.coordinates.shape != self.values.shape or self.coordinates.ndim != 1:
            raise ValueError("coordinates and values must be 1-D arrays of equal length")
        if self.coordinates.size > 1 and np.any(np.diff(self.coordinates) <= 0):
            raise ValueError("coordinates must be strictly increasing")
        if np.any(self.values < 0):
            raise ValueError("excitation values must be non-negative")

    def __len__(self):
        return self.values.size

    @property
    def normalized_coordinates(self):
        return self.coordinates / self.unit_length

    def with_values(self, values, **meta):
        md = dict(self.metadata)
        md.update(meta)
        return replace(self, values=np.asarray(values, dtype=float), metadata=md)

    def shifted(self, offset):
        return replace(self, coordinates=self.coordinates - offset,
                       metadata={**self.metadata, "shift": float(offset)})


@dataclass(frozen=True)
class BiphotonScenario:
    crystal: cr.CrystalSpec
    pump: PumpSpec = field(default_factory=PumpSpec)
    lens: LensSystem = field(default_factory=lambda: LensSystem(focal_length=math.inf))
    filter: SpectralFilter = field(default_factory=SpectralFilter)
    configuration: str = "imaging-ideal"

    def __post_init__(self):
        cfg = self.configuration
        if cfg not in CONFIGURATIONS:
            raise ValueError(f"unknown configuration {cfg!r}; expected one of {CONFIGURATIONS}")
        if cfg in ("focal", "imaging-aperture") and self.lens.aperture is None:
            raise DomainError(f"configuration {cfg!r} needs a lens aperture")
        if cfg in ("focal", "imaging-ideal", "imaging-aperture") and self.filter.bandwidth != 0:
            raise DomainError(f"configuration {cfg!r} assumes a monochromatic filter (bandwidth 0)")

    @property
    def equivalent_thickness(self):
        return cr.equivalent_thickness(self.crystal, self.pump)

    @property
    def delta_n(self):
        return cr.delta_n(self.crystal, self.pump)

    def cone_angle(self):
        return cr.emission_cone_angle(self.crystal, self.pump)

    def with_crystal(self, crystal):
        return replace(self, crystal=crystal)

    def with_lens(self, lens):
        return replace(self, lens=lens)

    def with_filter(self, flt):
        return replace(self, filter=flt)

    def describe(self):
        return {
            "configuration": self.configuration,
            "material": self.crystal.material.name,
            "crystal_thickness_m": self.crystal.thickness,
            "cut_angle_deg": math.degrees(self.crystal.cut_angle),
            "pump_wavelength_m": self.pump.wavelength,
            "pump_width_m": self.pump.width,
            "focal_length_m": self.lens.focal_length,
            "aperture_m": self.lens.aperture,
            "crystal_to_lens_m": self.lens.crystal_to_lens,
            "magnification": self.lens.magnification,
            "bandwidth_fraction": self.filter.bandwidth,
            "filter_normalization": self.filter.normalization,
            "equivalent_thickness_m": self.equivalent_thickness,
            "delta_n": self.delta_n,
        }


# --- classical baselines ---------------------------------------------------

def _unit_interval_chirp(c2, c1, spec):
    """``int_{-1/2}^{1/2} exp(-j (c2 b^2 + c1 b)) db`` for arrays of (c2, c1), by adaptive quadrature."""
    c2 = np.atleast_1d(np.asarray(c2, dtype=float)).ravel()
    c1 = np.atleast_1d(np.asarray(c1, dtype=float)).ravel()
    span = float(np.max(np.abs(c2)) * 0.25 + np.max(np.abs(c1)) * 0.5)
    s = spec.replace(initial_panels=max(spec.initial_panels, int(span // 8) + 1))
    res = integrate_1d(lambda b: quadratic_phase_matrix(c2, c1, b), -0.5, 0.5, s)
    return np.asarray(res.value), res


def kernel_A(X, Z, spec=None):
    """Diffraction kernel ``|int_{-1/2}^{1/2} exp(-j2pi X b) exp(-j pi Z b^2) db|^2``."""
    spec = spec or DEFAULT_SPEC.replace(rtol=1e-10)
    X, Z = np.broadcast_arrays(np.asarray(X, dtype=float), np.asarray(Z, dtype=float))
    amp, _ = _unit_interval_chirp(np.pi * Z, 2 * np.pi * X, spec)
    out = np.abs(amp) ** 2
    return out.reshape(X.shape) if X.ndim else float(out[0])


def g1(x, z, wavelength_p, lens, spec=None):
    """One-photon excitation at the pump wavelength: ``A(X, Z) / U``."""
    sc = scaled_coords(x, z, wavelength_p, lens)
    return kernel_A(sc.X, sc.Z, spec) / sc.U


def g2(x, z, wavelength_o, lens, spec=None):
    """Two-photon excitation by light at ``wavelength_o``, on pump-wavelength scales: ``A^2(X/2, Z/2) / U^2``."""
    sc = scaled_coords(x, z, wavelength_o / 2, lens)
    return kernel_A(sc.X / 2, sc.Z / 2, spec) ** 2 / sc.U ** 2


# --- focal region ----------------------------------------------------------

def g_kernel(u, mu1, mu2, rho_max=None, spec=None):
    """``int sinc(mu1 rho^2) exp(-j2pi mu2 rho^2) exp(j2pi u rho) drho`` over |rho| <= rho_max.

    ``mu1 == 0`` is the delta limit and has no pointwise value; the focal
    distribution handles it analytically.  A warning is raised when doubling
    ``rho_max`` changes the result by more than the tolerance.
    """
    if mu1 <= 0:
        raise DomainError("g_kernel needs mu1 > 0; mu1 = 0 is the analytic delta limit")
    spec = spec or DEFAULT_SPEC.replace(rtol=1e-8)
    u = np.atleast_1d(np.asarray(u, dtype=float))
    if rho_max is None:
        rho_max = 20.0 / math.sqrt(mu1)

    def compute(r):
        panels = int(math.ceil(r * (np.max(np.abs(u)) + 2 * max(mu1, mu2) * r + 1) / 2)) + 1

        def integrand(rho):
            w = np.sinc(mu1 * rho * rho) * np.exp(-2j * np.pi * mu2 * rho * rho)
            return w[None, :] * np.cos(2 * np.pi * np.outer(u, rho))

        res = integrate_1d(integrand, 0.0, r, spec.replace(initial_panels=min(panels, 4096)))
        return 2 * np.asarray(res.value)

    g = compute(rho_max)
    g2r = compute(2 * rho_max)
    change = float(np.max(np.abs(g2r - g)) / max(np.max(np.abs(g2r)), 1e-300))
    if change > 1e-3:
        warnings.warn(f"g_kernel truncation at rho_max={rho_max:g} changes result by {change:.2e}",
                      RuntimeWarning, stacklevel=2)
    return g if g.size > 1 else complex(g[0])


def _pupil_pair(rho, X, Z):
    """``a(rho) = int_{-1/2}^{1/2} exp(-j pi Z/2 a^2 - j pi X a + j 2 pi rho a) da`` in closed form."""
    c2 = 0.5 * np.pi * Z
    c1 = np.pi * X - 2 * np.pi * rho
    if abs(c2) * 0.25 < 1e-12:
        return np.sinc(c1 / (2 * np.pi)) + 0j
    return chirp_integral(c2, c1, -0.5, 0.5)


def focal_exact_XZ(X, Z, mu1, mu2, spec=None, rho_max=None):
    """Squared magnitude of the focal double integral with a finite-thickness kernel.

    The double integral over the pupil coordinates with the kernel
    ``g(alpha - beta)`` is evaluated with the order of integration swapped:
    ``int drho sinc(mu1 rho^2) exp(-j2pi mu2 rho^2) a(rho) a(-rho)``, where
    ``a`` is a closed-form pupil chirp.  Returns (value, QuadratureResult).
    """
    spec = spec or DEFAULT_SPEC.replace(rtol=1e-8)
    if mu1 == 0 and mu2 == 0:
        return float(kernel_A(X, Z)), None
    if rho_max is None:
        rho_max = max(200.0, 40.0 / math.sqrt(max(mu1, 1e-12)))

    def integrand(rho):
        w = np.sinc(mu1 * rho * rho) * np.exp(-2j * np.pi * mu2 * rho * rho)
        return w * _pupil_pair(rho, X, Z) * _pupil_pair(-rho, X, Z)

    panels = int(rho_max * (1 + 2 * max(mu1, mu2) * rho_max) / 2) + 1
    res = integrate_1d(integrand, -rho_max, rho_max, spec.replace(initial_panels=min(panels, 20000)))
    return float(abs(res.value) ** 2), res


def focal_direct_XZ(X, Z, mu1, mu2, n_nodes=256, rho_max=None):
    """Brute-force midpoint-rule evaluation over (alpha, beta) with a tabulated g-kernel.

    The midpoint lattice puts every difference alpha - beta on ``k/n``, so only
    ``2n - 1`` kernel values are needed.  Independent of
    :func:`focal_exact_XZ`; accurate to O(1/n^2).
    """
    n = int(n_nodes)
    h = 1.0 / n
    a = -0.5 + h * (np.arange(n) + 0.5)
    lags = h * np.arange(-(n - 1), n)
    g = np.atleast_1d(g_kernel(lags, mu1, mu2, rho_max=rho_max))
    idx = np.arange(n)
    gmat = g[(idx[:, None] - idx[None, :]) + (n - 1)]
    ph = h * np.exp(-1j * np.pi * (Z / 2) * a * a - 1j * np.pi * X * a)
    val = ph @ gmat @ ph
    return float(abs(val) ** 2)


def gb2_focal(x, z, scenario, method="fast", mu=None, spec=None):
    """Biphoton excitation near the focus of a lens fed with collinear SPDC.

    ``method="fast"`` uses the delta-kernel reduction ``A(X, Z)/U^2`` on
    pump-wavelength scales; ``"exact"`` integrates the finite-thickness
    kernel with ``mu = (mu1, mu2)`` (taken from the scenario when omitted).
    """
    lens = scenario.lens
    lam_p = scenario.pump.wavelength
    sc = scaled_coords(x, z, lam_p, lens)
    if method == "fast":
        return kernel_A(sc.X, sc.Z, spec) / sc.U ** 2
    if method != "exact":
        raise ValueError(f"unknown method {method!r}")
    if mu is None:
        mu1, mu2, _ = mu_parameters(lens, scenario.equivalent_thickness, scenario.pump.degenerate_wavelength)
    else:
        mu1, mu2 = mu
    X = np.atleast_1d(sc.X).ravel()
    Z = np.atleast_1d(sc.Z).ravel()
    U = np.broadcast_to(np.atleast_1d(sc.U), np.broadcast(np.atleast_1d(sc.X), np.atleast_1d(sc.U)).shape).ravel()
    vals = np.array([focal_exact_XZ(xx, zz, mu1, mu2, spec)[0] for xx, zz in zip(X, Z)])
    vals = vals / U ** 2
    shape = np.broadcast(np.asarray(x), np.asarray(z)).shape
    return vals.reshape(shape) if shape else float(vals[0])


# --- image region ----------------------------------------------------------

@dataclass
class AxialReport:
    q_max: float
    truncation_change: float
    doublings: int
    quadrature: dict

    def as_dict(self):
        return {"q_max_rad_per_m": self.q_max, "truncation_change": self.truncation_change,
                "doublings": self.doublings, **self.quadrature}


def default_q_max(scenario, extra_dn=0.0):
    """Half-range of the transverse-momentum integral (rad/m)."""
    pump, crys = scenario.pump, scenario.crystal
    dn = scenario.delta_n + extra_dn
    theta = cr.emission_cone_angle(crys, pump, dn=dn)
    n_o = float(cr.index_ordinary(pump.degenerate_wavelength, crys))
    return Q_RANGE_FACTOR * theta * n_o * pump.omega_o / C_LIGHT


def _converged_curve(shell, q_max, k_limit, truncation_rtol, rtol_abs):
    """Accumulate ``shell(Q0, Q1)`` over [0, Q], [Q, 2Q], ... until |amp|^2 settles relative to its peak.

    The doubling check costs only the outer shell, so the returned curve is
    always the one integrated up to the largest radius tried.
    """
    # keep the confirming shell propagating: never integrate beyond k_limit
    q_max = min(q_max, 0.5 * k_limit)
    amp, rep = shell(0.0, q_max, 0.0)
    evaluations = rep["evaluations"]
    change = math.inf
    doublings = 0
    while doublings < MAX_DOUBLINGS and q_max < k_limit:
        q_next = min(2 * q_max, k_limit)
        # outer shells are small; hold them to the absolute error allowed for the whole curve
        extra, rep = shell(q_max, q_next, rtol_abs * float(np.max(np.abs(amp))))
        evaluations += rep["evaluations"]
        new = amp + extra
        g, g_new = np.abs(amp) ** 2, np.abs(new) ** 2
        change = float(np.max(np.abs(g_new - g)) / max(np.max(g_new), 1e-300))
        amp, q_max = new, q_next
        doublings += 1
        if change <= truncation_rtol:
            break
    if change > truncation_rtol:
        raise NonConvergenceError(
            f"q-range truncation did not settle: change {change:.3g} > {truncation_rtol:g} at q_max={q_max:.4g}",
            estimate=np.abs(amp) ** 2, error=change)
    rep = dict(rep, evaluations=evaluations)
    return amp, AxialReport(q_max, change, doublings, rep)


def _q_integral(values_at, q_lo, q_hi, spec, span, atol=0.0):
    """``2 int_{q_lo}^{q_hi} values_at(q) dq`` for integrands even in q (vector-valued)."""
    s = spec.replace(initial_panels=max(spec.initial_panels, int(span // 16) + 2),
                     atol=max(spec.atol, atol / 2))
    res = integrate_1d(values_at, q_lo, q_hi, s)
    return 2 * np.asarray(res.value), res.report()


def _k_o(scenario):
    pump, crys = scenario.pump, scenario.crystal
    return float(cr.index_ordinary(pump.degenerate_wavelength, crys)) * pump.omega_o / C_LIGHT


def _axial_z(z, f):
    z = np.atleast_1d(np.asarray(z, dtype=float))
    if np.any(z <= -f):
        raise DomainError(f"axial position must satisfy z > -f = {-f:g} m")
    U = 1 + z / f
    return z, U


def gbi_ideal_axial(z, scenario, spec=None, q_max=None, truncation_rtol=TRUNCATION_RTOL,
                    return_report=False):
    """Axial biphoton excitation behind an ideal unit-magnification imaging lens.

    Plane-wave pump, monochromatic degenerate filter; independent of x.
    ``q_max`` overrides the truncation radius (useful below the collinear
    cut angle, where no emission cone exists).
    """
    spec = spec or DEFAULT_SPEC
    pump, crys = scenario.pump, scenario.crystal
    z, U = _axial_z(z, scenario.lens.focal_length)
    c2 = pump.wavelength * z / (np.pi * U)
    k_o = _k_o(scenario)
    omega_o = pump.omega_o
    q0 = default_q_max(scenario) if q_max is None else q_max

    def integrand(q):
        zeta = cr.zeta(q, -q, omega_o, pump, crys)
        return quadratic_phase_matrix(c2, 0.0, q) * zeta[None, :]

    def shell(q_lo, q_hi, atol):
        span = (np.max(np.abs(c2)) + crys.thickness / k_o) * (q_hi * q_hi - q_lo * q_lo)
        return _q_integral(integrand, q_lo, q_hi, spec, span, atol)

    amp, rep = _converged_curve(shell, q0, 0.9 * k_o, truncation_rtol, spec.rtol)
    g = np.abs(amp) ** 2
    return (g, rep) if return_report else g


def gb2_imaging_aperture(z, scenario, spec=None, q_max=None, truncation_rtol=TRUNCATION_RTOL,
                         return_report=False):
    """Axial biphoton excitation (x = 0) through a 2f-2f system with a rectangular pupil."""
    spec = spec or DEFAULT_SPEC
    pump, crys, lens = scenario.pump, scenario.crystal, scenario.lens
    if lens.aperture is None:
        raise DomainError("aperture configuration needs a finite lens aperture")
    z, U = _axial_z(z, lens.focal_length)
    lam_o = pump.degenerate_wavelength
    k_o = _k_o(scenario)
    if q_max is None:
        # the pupil passes |q| up to about k * theta_lens; beyond that H decays like an edge wave
        q_cut = 2 * np.pi / lam_o * lens_half_angle(lens)
        q0 = min(default_q_max(scenario), 3 * q_cut)
    else:
        q0 = q_max
    c2 = pump.wavelength * z / (np.pi * U)

    def integrand(q):
        zeta = cr.zeta(q, -q, pump.omega_o, pump, crys)
        h = transfer_imaging_aperture(0.0, z[:, None], q[None, :], lam_o, lens)
        return h * h * zeta[None, :]

    def shell(q_lo, q_hi, atol):
        span = (np.max(np.abs(c2)) + crys.thickness / k_o) * (q_hi * q_hi - q_lo * q_lo)
        return _q_integral(integrand, q_lo, q_hi, spec, span, atol)

    amp, rep = _converged_curve(shell, q0, 0.9 * k_o, truncation_rtol, spec.rtol)
    g = np.abs(amp) ** 2
    return (g, rep) if return_report else g


def _band_mismatch_extra(scenario):
    """Largest extra index mismatch reached anywhere in the passband (for the q-range)."""
    pump, crys = scenario.pump, scenario.crystal
    bw = scenario.filter.bandwidth
    omega_o = pump.omega_o
    worst = 0.0
    for nu in (1 - bw / 2, 1 + bw / 2):
        d_r = float(cr.delta_r(0.0, 0.0, nu * omega_o, pump, crys) - cr.delta_r(0.0, 0.0, omega_o, pump, crys))
        worst = max(worst, -d_r * C_LIGHT / (2 * omega_o))
    return worst


def gb2_imaging_bandwidth(z, scenario, spec=None, q_max=None, truncation_rtol=TRUNCATION_RTOL,
                          return_report=False):
    """Axial biphoton excitation with a flat spectral filter of fractional width BW.

    Signal at ``nu * omega_o`` with ``nu`` in ``[1 - BW/2, 1 + BW/2]``, idler at
    ``omega_p - omega_s``; dispersion enters through the crystal function and
    the lens is achromatic.  BW = 0 is the monochromatic curve.
    """
    bw = scenario.filter.bandwidth
    if bw == 0:
        return gbi_ideal_axial(z, scenario, spec, q_max, truncation_rtol, return_report)
    spec = spec or DEFAULT_SPEC
    pump, crys = scenario.pump, scenario.crystal
    z, U = _axial_z(z, scenario.lens.focal_length)
    k_o = _k_o(scenario)
    omega_o, omega_p = pump.omega_o, pump.omega
    q0 = default_q_max(scenario, extra_dn=_band_mismatch_extra(scenario)) if q_max is None else q_max
    inner_spec = spec
    # output = 2 int a(nu) dnu / norm; an error e in a(nu) reaches the output as e * bw / norm
    norm = bw if scenario.filter.normalization == "area" else 1.0

    def shell(q_lo, q_hi, atol):
        inner_evals = [0]

        def at_frequency(nu):
            omega_s = nu * omega_o
            lam_sum = 2 * np.pi * C_LIGHT * (1 / omega_s + 1 / (omega_p - omega_s))
            c2 = lam_sum * z / (4 * np.pi * U)

            def integrand(q):
                zeta = cr.zeta(q, -q, omega_s, pump, crys)
                return quadratic_phase_matrix(c2, 0.0, q) * zeta[None, :]

            span = (np.max(np.abs(c2)) + crys.thickness / k_o) * (q_hi * q_hi - q_lo * q_lo)
            amp, rep = _q_integral(integrand, q_lo, q_hi, inner_spec, span, atol * norm / bw)
            inner_evals[0] += rep["evaluations"]
            return amp

        def outer(nus):
            return np.stack([at_frequency(nu) for nu in nus], axis=-1)

        # signal/idler exchange makes the integrand even about nu = 1
        s = spec.replace(rtol=spec.rtol / 2, order=min(spec.order, 16), initial_panels=1,
                         atol=atol * norm / 2)
        res = integrate_1d(outer, 1.0, 1 + bw / 2, s)
        amp = 2 * np.asarray(res.value)
        amp = amp / norm
        rep = res.report()
        rep["outer_evaluations"] = rep["evaluations"]
        rep["evaluations"] = inner_evals[0]
        return amp, rep

    amp, rep = _converged_curve(shell, q0, 0.9 * k_o, truncation_rtol, spec.rtol)
    g = np.abs(amp) ** 2
    return (g, rep) if return_report else g


def pump_validity_bound(scenario):
    """``sqrt(l_eq * lambda_p)``: the pump must be much wider than this for image-of-pump behaviour."""
    return math.sqrt(scenario.equivalent_thickness * scenario.pump.wavelength)


def gb2_imaging_pump_profile(x, scenario, spec=None, q_max=None, return_report=False):
    """Transverse biphoton excitation at the image plane (z = 0) for a finite pump.

    Integrates over the pump spectrum (sum momentum ``Q = q_s + q_i``) and
    the relative momentum ``q = (q_s - q_i)/2``.  The report carries a
    validity flag for narrow pumps and the effective exponent ``p`` such that
    the output width matches that of ``|E_p|^(2p)``.
    """
    spec = spec or DEFAULT_SPEC
    pump, crys = scenario.pump, scenario.crystal
    x = np.atleast_1d(np.asarray(x, dtype=float))
    omega_o = pump.omega_o
    k_o = _k_o(scenario)
    qq = default_q_max(scenario) if q_max is None else q_max
    bound = pump_validity_bound(scenario)
    report = {"validity_bound_m": bound, "q_max_rad_per_m": qq}

    def inner(Qs):
        Qs = np.atleast_1d(Qs)

        def integrand(q):
            return cr.zeta(Qs[:, None] / 2 + q[None, :], Qs[:, None] / 2 - q[None, :], omega_o, pump, crys)

        span = crys.thickness / k_o * qq * qq
        amp, _ = _q_integral(integrand, 0.0, qq, spec, span)
        return amp

    if pump.is_plane_wave:
        k0 = inner(np.array([0.0]))[0]
        g = np.full(x.shape, abs(2 * np.pi * k0) ** 2)
        report.update(valid=True, warning=None)
        return (g, report) if return_report else g

    b = pump.width
    q_pump = 9.0 / b

    def outer(Qs):
        weights = pump.angular_spectrum(Qs) * inner(Qs)
        return quadratic_phase_matrix(0.0 * x, x, Qs) * weights[None, :]

    span = float(np.max(np.abs(x))) * q_pump
    s = spec.replace(initial_panels=max(spec.initial_panels, int(span // 16) + 2))
    res = integrate_1d(outer, -q_pump, q_pump, s)
    g = np.abs(np.asarray(res.value)) ** 2
    valid = b >= 10 * bound
    report.update(res.report())
    report.update(valid=bool(valid),
                  warning=None if valid else
                  f"pump width {b:.3g} m is not >> sqrt(l_eq*lambda_p) = {bound:.3g} m; "
                  "diffraction inside the crystal is not negligible")
    return (g, report) if return_report else g


def lambda_fn(q_s, q_i, omega_s, scenario):
    """Pump spectrum times crystal function.

    For a plane-wave pump the spectrum is a delta at ``q_s + q_i = 0``; the
    returned array carries the crystal function there (the delta's weight)
    and zero elsewhere.
    """
    pump, crys = scenario.pump, scenario.crystal
    q_s, q_i = np.broadcast_arrays(np.asarray(q_s, dtype=float), np.asarray(q_i, dtype=float))
    zeta = cr.zeta(q_s, q_i, omega_s, pump, crys)
    if pump.is_plane_wave:
        return np.where(q_s + q_i == 0, zeta, 0.0)
    return pump.angular_spectrum(q_s + q_i) * zeta
