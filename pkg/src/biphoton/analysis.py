"""Curve metrology (peak, FWHM, normalisation) and parameter sweeps."""
import math
from dataclasses import dataclass, field, replace
from typing import Optional

import numpy as np

from . import crystal as cr
from . import excitation as ex
from .errors import AmbiguousCurveError, DomainError
from .optics import SpectralFilter, aperture_for_ratio

MIN_SAMPLES = 64
DEFAULT_SAMPLES = 257


@dataclass(frozen=True)
class CurveMetrics:
    peak_value: float
    peak_location: float
    fwhm: float
    half_max_crossings: tuple
    normalization_unit: str = "raw"
    unit_length: float = 1.0

    def __post_init__(self):
        lo, hi = self.half_max_crossings
        if not self.fwhm > 0:
            raise ValueError("fwhm must be positive")
        if not lo <= self.peak_location <= hi:
            raise ValueError("half-max crossings must bracket the peak")

    @property
    def center(self):
        """Midpoint of the half-max crossings."""
        return 0.5 * (self.half_max_crossings[0] + self.half_max_crossings[1])

    @property
    def fwhm_normalized(self):
        return self.fwhm / self.unit_length

    def as_dict(self):
        return {"peak_value": self.peak_value, "peak_location_m": self.peak_location,
                "fwhm_m": self.fwhm, "fwhm_normalized": self.fwhm_normalized,
                "half_max_crossings_m": list(self.half_max_crossings),
                "center_m": self.center, "normalization_unit": self.normalization_unit,
                "unit_length_m": self.unit_length}


def _crossing(x0, x1, y0, y1, level):
    return x0 + (level - y0) * (x1 - x0) / (y1 - y0)


def fwhm(curve):
    """Peak and full width at half maximum of a sampled curve.

    Crossings are found by linear interpolation.  A maximum on an endpoint,
    an endpoint at or above half maximum, or more than one pair of crossings
    raises :class:`AmbiguousCurveError`.
    """
    x, y = curve.coordinates, curve.values
    if y.size < 3:
        raise AmbiguousCurveError("curve needs at least three samples")
    k = int(np.argmax(y))
    peak = float(y[k])
    if not peak > 0:
        raise AmbiguousCurveError("curve has no positive maximum")
    if k == 0 or k == y.size - 1:
        raise AmbiguousCurveError(f"maximum lies on an endpoint (x = {x[k]:.6g})")
    half = 0.5 * peak
    if y[0] >= half or y[-1] >= half:
        raise AmbiguousCurveError("curve does not fall below half maximum at both ends; widen the window")
    above = y >= half
    edges = np.flatnonzero(np.diff(above.astype(np.int8)))
    crossings = [_crossing(x[i], x[i + 1], y[i], y[i + 1], half) for i in edges]
    if len(crossings) != 2:
        raise AmbiguousCurveError(
            f"expected one pair of half-max crossings, found {len(crossings)}", crossings=crossings)
    lo, hi = crossings
    return CurveMetrics(peak_value=peak, peak_location=float(x[k]), fwhm=float(hi - lo),
                        half_max_crossings=(float(lo), float(hi)),
                        normalization_unit=curve.normalization_unit, unit_length=curve.unit_length)


def normalize_peak(curve):
    if len(curve) == 0:
        raise ValueError("cannot normalise an empty curve")
    peak = float(np.max(curve.values))
    if not peak > 0:
        raise ValueError("cannot normalise a curve whose maximum is not positive")
    return curve.with_values(curve.values / peak, peak_scale=peak)


def center_curve(curve, metrics=None):
    """Shift coordinates so the midpoint of the half-max crossings sits at zero."""
    metrics = metrics or fwhm(curve)
    return curve.shifted(metrics.center)


def refine_peak(fn, x, y, iterations=3, points=9):
    """Refine the maximum of a sampled function by repeated dense resampling around the best sample.

    ``fn`` maps an array of abscissae to values.  Returns ``(x_peak, y_peak)``.
    """
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    k = int(np.argmax(y))
    best_x, best_y = float(x[k]), float(y[k])
    lo = x[max(k - 1, 0)]
    hi = x[min(k + 1, x.size - 1)]
    for _ in range(iterations):
        xs = np.linspace(lo, hi, points)
        ys = np.asarray(fn(xs), dtype=float)
        j = int(np.argmax(ys))
        if ys[j] > best_y:
            best_x, best_y = float(xs[j]), float(ys[j])
        step = xs[1] - xs[0]
        lo, hi = best_x - step, best_x + step
    return best_x, best_y


# --- sampling scenarios ----------------------------------------------------

def axial_function(scenario, spec=None):
    """``z -> (values, report dict)`` for the scenario's axial configuration."""
    cfg = scenario.configuration
    if cfg == "imaging-ideal":
        fn = ex.gbi_ideal_axial
    elif cfg == "imaging-aperture":
        fn = ex.gb2_imaging_aperture
    elif cfg == "imaging-bandwidth":
        fn = ex.gb2_imaging_bandwidth
    elif cfg == "focal":
        def focal(z, scenario, spec=None, return_report=True):
            return ex.gb2_focal(0.0, z, scenario, spec=spec), None
        fn = focal
    else:
        raise DomainError(f"configuration {cfg!r} has no axial distribution")

    def evaluate(z):
        vals, rep = fn(z, scenario, spec=spec, return_report=True)
        return np.asarray(vals, dtype=float), (rep.as_dict() if hasattr(rep, "as_dict") else rep)

    return evaluate


def default_axial_window(scenario):
    """Initial axial window (m) expected to contain the main lobe."""
    l_eq = scenario.equivalent_thickness
    lens = scenario.lens
    if scenario.configuration == "focal":
        from .optics import scaled_coords
        z_c = scaled_coords(0.0, 0.0, scenario.pump.wavelength, lens).z_c
        return -6 * z_c, 6 * z_c
    half = 1.5 * l_eq
    if scenario.configuration == "imaging-aperture":
        from .optics import lens_half_angle
        theta = lens_half_angle(lens)
        half = max(half, 1.5 * scenario.pump.degenerate_wavelength / theta ** 2)
    lo, hi = -0.5 * l_eq - half, -0.5 * l_eq + half
    f = lens.focal_length
    if lo <= -0.98 * f:
        lo = -0.98 * f
    return lo, hi


def sample_axial(scenario, samples=DEFAULT_SAMPLES, window=None, spec=None, max_widenings=4):
    """Sample the axial distribution on ``samples`` points, widening the window until both ends drop below half maximum."""
    if samples < MIN_SAMPLES:
        raise ValueError(f"at least {MIN_SAMPLES} samples are needed for width extraction")
    evaluate = axial_function(scenario, spec)
    lo, hi = window or default_axial_window(scenario)
    f = scenario.lens.focal_length
    for _ in range(max_widenings + 1):
        z = np.linspace(lo, hi, samples)
        vals, rep = evaluate(z)
        peak = float(np.max(vals))
        if vals[0] < 0.5 * peak and vals[-1] < 0.5 * peak:
            break
        mid, half = 0.5 * (lo + hi), (hi - lo)
        lo, hi = mid - half, mid + half
        if lo <= -0.98 * f:
            lo = -0.98 * f
    unit, length = _axial_unit(scenario)
    meta = {"scenario": scenario.describe(), "window_m": [float(z[0]), float(z[-1])], "quadrature": rep}
    return ex.Distribution1D("axial", z, vals, unit, length, meta)


def _axial_unit(scenario):
    if scenario.configuration == "focal":
        from .optics import scaled_coords
        return "z_c", scaled_coords(0.0, 0.0, scenario.pump.wavelength, scenario.lens).z_c
    return "l_eq", scenario.equivalent_thickness


# --- sweeps ----------------------------------------------------------------

@dataclass
class SweepResult:
    parameter: str
    values: list
    metrics: list
    verdicts: dict = field(default_factory=dict)
    metadata: dict = field(default_factory=dict)

    def __post_init__(self):
        if len(self.values) != len(self.metrics):
            raise ValueError("one metrics entry per parameter value")
        if any(b <= a for a, b in zip(self.values, self.values[1:])):
            raise ValueError("sweep parameter values must be strictly increasing")

    def as_dict(self):
        return {"parameter": self.parameter, "values": list(self.values),
                "metrics": [m.as_dict() if hasattr(m, "as_dict") else m for m in self.metrics],
                "verdicts": self.verdicts, "metadata": self.metadata}


def _check_grid(grid):
    grid = [float(v) for v in grid]
    if not grid:
        raise ValueError("sweep grid is empty")
    return sorted(grid)


def strictly_increasing(v):
    return all(b > a for a, b in zip(v, v[1:]))


def strictly_decreasing(v):
    return all(b < a for a, b in zip(v, v[1:]))


def is_unimodal(v):
    """Strict rise to an interior maximum, then strict fall."""
    v = list(v)
    if len(v) < 3:
        return False
    k = int(np.argmax(v))
    if k == 0 or k == len(v) - 1:
        return False
    return strictly_increasing(v[:k + 1]) and strictly_decreasing(v[k:])


def cut_angle_grid(pump, crystal, count=40, below_deg=0.05, above_deg=1.0):
    """``count`` cut angles (rad) from ``below_deg`` under to ``above_deg`` over the collinear angle."""
    th0 = cr.collinear_cut_angle(pump, crystal)
    return list(th0 + np.radians(np.linspace(-below_deg, above_deg, count)))


@dataclass
class PeakSample:
    """Peak of a curve only (for sweeps whose width is not defined everywhere)."""

    peak_value: float
    peak_location: float
    fwhm: Optional[float] = None

    def as_dict(self):
        return {"peak_value": self.peak_value, "peak_location_m": self.peak_location, "fwhm_m": self.fwhm}


def _peak_of_axial(scenario, samples, q_max, spec, refine):
    # the maximum sits on the plateau over [-l_eq, 0]; a margin of l_eq/2 each side is enough
    l_eq = scenario.equivalent_thickness
    z = np.linspace(-1.5 * l_eq, 0.5 * l_eq, samples)

    def fn(zz):
        return ex.gbi_ideal_axial(zz, scenario, spec=spec, q_max=q_max)

    vals = fn(z)
    if refine:
        zp, peak = refine_peak(fn, z, vals, iterations=2)
    else:
        k = int(np.argmax(vals))
        zp, peak = float(z[k]), float(vals[k])
    return PeakSample(peak_value=float(peak), peak_location=float(zp))


def sweep_cut_angle(scenario, angles, samples=65, spec=None, refine=True):
    """Peak of the ideal-imaging axial curve versus cut angle (radians).

    Angles below the collinear cut have no emission cone; their q-range is
    taken from the collinear geometry so every grid point uses comparable
    truncation.
    """
    angles = _check_grid(angles)
    crys = scenario.crystal
    col = crys.with_cut_angle(cr.collinear_cut_angle(scenario.pump, crys))
    q_floor = ex.default_q_max(scenario.with_crystal(col))
    metrics = []
    for th in angles:
        sc = scenario.with_crystal(crys.with_cut_angle(th))
        dn = sc.delta_n
        q_max = None if dn >= 0 else q_floor
        if q_max is None:
            q_max = max(ex.default_q_max(sc), q_floor)
        metrics.append(_peak_of_axial(sc, samples, q_max, spec, refine))
    peaks = [m.peak_value for m in metrics]
    verdicts = {}
    meta = {"angles_deg": [math.degrees(a) for a in angles],
            "collinear_deg": math.degrees(col.cut_angle), "samples": samples, "refined": refine}
    if len(angles) > 1:
        k = int(np.argmax(peaks))
        verdicts = {"unimodal": is_unimodal(peaks),
                    "argmax_deg": math.degrees(angles[k]),
                    "argmax_above_collinear": angles[k] > col.cut_angle,
                    "sign_changes": int(np.sum(np.diff(np.sign(np.diff(peaks))) != 0))}
    return SweepResult("cut_angle_rad", angles, metrics, verdicts, meta)


def sweep_bandwidth(scenario, bandwidths, samples=DEFAULT_SAMPLES, spec=None, window=None):
    """Axial metrics versus fractional bandwidth.

    Curves are computed with the ``"area"`` filter normalisation (unit
    spectral area) and the ``"transmission"`` peak follows exactly as
    ``BW^2`` times the area peak; both peak series get monotonicity
    verdicts.  The width is the same under either normalisation.
    """
    bws = _check_grid(bandwidths)
    metrics = []
    transmission = []
    for bw in bws:
        sc = replace(scenario, configuration="imaging-bandwidth",
                     filter=SpectralFilter(bw, "area"))
        curve = sample_axial(sc, samples, window=window, spec=spec)
        m = fwhm(curve)
        metrics.append(m)
        transmission.append(bw * bw * m.peak_value)
    area = [m.peak_value for m in metrics]
    widths = [m.fwhm for m in metrics]
    verdicts = {}
    if len(bws) > 1:
        verdicts = {"peak_increasing_transmission": strictly_increasing(transmission),
                    "peak_increasing_area": strictly_increasing(area),
                    "fwhm_decreasing": strictly_decreasing(widths)}
    meta = {"transmission_peaks": transmission, "area_peaks": area,
            "fractional_narrowing": [1 - w / widths[0] for w in widths]}
    return SweepResult("bandwidth_fraction", bws, metrics, verdicts, meta)


def sweep_delta(scenario, deltas, samples=DEFAULT_SAMPLES, spec=None):
    """Axial metrics of the aperture-limited curve versus ``delta = theta_SPDC / theta_lens``."""
    ds = _check_grid(deltas)
    if any(d <= 0 for d in ds):
        raise DomainError("delta must be positive")
    lens = scenario.lens
    cone = scenario.cone_angle()
    metrics = []
    for d in ds:
        aperture = aperture_for_ratio(d, cone, lens.focal_length, lens.magnification)
        sc = replace(scenario, configuration="imaging-aperture",
                     lens=replace(lens, aperture=aperture))
        metrics.append(fwhm(sample_axial(sc, samples, spec=spec)))
    widths = [m.fwhm for m in metrics]
    verdicts = {"fwhm_increasing": strictly_increasing(widths)} if len(ds) > 1 else {}
    return SweepResult("delta", ds, metrics, verdicts, {"cone_angle_rad": cone})
