"""Figure recipes: each returns named curves/tables plus metadata, ready for writing."""
import math
from dataclasses import dataclass, field, replace
from typing import Optional

import numpy as np

from . import analysis as an
from . import crystal as cr
from . import excitation as ex
from .errors import AmbiguousCurveError
from .optics import LensSystem, PumpSpec, SpectralFilter, aperture_for_ratio, scaled_coords
from .quadrature import QuadratureSpec

FIGURE_IDS = ("2a", "2b", "4", "5", "6", "7", "8a", "8b", "9")

FOCAL_LENS = LensSystem(focal_length=0.1, aperture=0.025)
THICKNESSES_MM = (2.0, 5.0, 10.0)
FIG5_OFFSETS_DEG = (0.0, 0.05, 0.1, 0.2, 0.5)
FIG7_DELTAS = (0.1, 0.65, 1.0, 2.0, 4.0)
FIG7_FOCAL_LENGTH = 0.1
BANDWIDTHS = (0.0, 0.02, 0.06, 0.12, 0.20)
# cut angles giving the highest axial peak for each thickness
BEST_CUT_DEG = {10.0: 22.89, 2.0: 22.95}


@dataclass
class CurveEntry:
    name: str
    label: str
    curve: ex.Distribution1D
    metrics: Optional[an.CurveMetrics] = None
    note: Optional[str] = None


@dataclass
class Table:
    name: str
    columns: list
    rows: list


@dataclass
class FigureOutput:
    figure: str
    title: str
    xlabel: str
    curves: list = field(default_factory=list)
    tables: list = field(default_factory=list)
    metadata: dict = field(default_factory=dict)
    normalize_plot: bool = False


@dataclass(frozen=True)
class FigureParams:
    samples: int = an.DEFAULT_SAMPLES
    spec: QuadratureSpec = ex.DEFAULT_SPEC
    pump: PumpSpec = PumpSpec()
    material: cr.Material = cr.BBO


def _collinear_crystal(thickness_m, params):
    probe = cr.CrystalSpec(thickness_m, math.radians(30.0), params.material)
    return probe.with_cut_angle(cr.collinear_cut_angle(params.pump, probe))


def _metrics(curve):
    try:
        return an.fwhm(curve), None
    except AmbiguousCurveError as exc:
        return None, str(exc)


def _centered_entry(name, label, curve):
    m, note = _metrics(curve)
    if m is None:
        return CurveEntry(name, label, curve, None, note)
    centered = an.center_curve(curve, m)
    return CurveEntry(name, label, centered, an.fwhm(centered), None)


def _classical(axis, params):
    lens = FOCAL_LENS
    lam_p = params.pump.wavelength
    sc0 = scaled_coords(0.0, 0.0, lam_p, lens)
    scenario = ex.BiphotonScenario(_collinear_crystal(2e-3, params), params.pump, lens,
                                   configuration="focal")
    if axis == "axial":
        u = np.linspace(-8.0, 8.0, params.samples)
        z, x, unit, length = u * sc0.z_c, 0.0 * u, "z_c", sc0.z_c
        coord = z
    else:
        u = np.linspace(-1.5, 1.5, params.samples)
        x, z, unit, length = u * sc0.x_c, 0.0 * u, "x_c", sc0.x_c
        coord = x
    curves = [
        ("one_photon", "one-photon (pump wavelength)", ex.g1(x, z, lam_p, lens, params.spec)),
        ("two_photon", "two-photon (degenerate wavelength)",
         ex.g2(x, z, params.pump.degenerate_wavelength, lens, params.spec)),
        ("biphoton_focal", "biphoton", ex.gb2_focal(x, z, scenario, spec=params.spec)),
    ]
    out = []
    for name, label, vals in curves:
        c = ex.Distribution1D(axis, coord, vals, unit, length, {"lens": {"focal_length_m": lens.focal_length,
                                                                      "aperture_m": lens.aperture}})
        m, note = _metrics(c)
        out.append(CurveEntry(name, label, c, m, note))
    return out, {"z_c_m": sc0.z_c, "x_c_m": sc0.x_c, "f_number": lens.f_number,
                 "pump_wavelength_m": lam_p}


def fig_2a(params):
    curves, meta = _classical("axial", params)
    return FigureOutput("2a", "axial one-photon, two-photon and biphoton excitation at the focus",
                        "z/z_c", curves, metadata=meta)


def fig_2b(params):
    curves, meta = _classical("transverse", params)
    return FigureOutput("2b", "transverse one-photon, two-photon and biphoton excitation at the focus",
                        "x/x_c", curves, metadata=meta)


def fig_4(params):
    out = FigureOutput("4", "ideal-imaging axial biphoton excitation, collinear cut", "z/l_eq")
    for t in THICKNESSES_MM:
        sc = ex.BiphotonScenario(_collinear_crystal(t * 1e-3, params), params.pump)
        curve = an.sample_axial(sc, params.samples, spec=params.spec)
        out.curves.append(_centered_entry(f"thickness_{t:g}mm", f"l = {t:g} mm", curve))
        out.metadata[f"l_eq_{t:g}mm_m"] = sc.equivalent_thickness
    out.metadata["cut_angle_deg"] = math.degrees(sc.crystal.cut_angle)
    return out


def fig_5(params):
    out = FigureOutput("5", "ideal-imaging axial biphoton excitation versus cut angle (2 mm)", "z/l_eq")
    base = _collinear_crystal(2e-3, params)
    for off in FIG5_OFFSETS_DEG:
        crys = base.with_cut_angle(base.cut_angle + math.radians(off))
        sc = ex.BiphotonScenario(crys, params.pump)
        curve = an.sample_axial(sc, params.samples, spec=params.spec)
        deg = math.degrees(crys.cut_angle)
        out.curves.append(_centered_entry(f"cut_{deg:.2f}deg", f"theta_cut = {deg:.2f} deg", curve))
    out.metadata.update(offsets_deg=list(FIG5_OFFSETS_DEG), l_eq_m=base.thickness / float(
        cr.index_ordinary(params.pump.degenerate_wavelength, base)))
    return out


def fig_6(params, count=40):
    out = FigureOutput("6", "peak of the ideal-imaging axial curve versus cut angle", "cut angle (deg)")
    for t in THICKNESSES_MM:
        base = _collinear_crystal(t * 1e-3, params)
        sc = ex.BiphotonScenario(base, params.pump)
        grid = an.cut_angle_grid(params.pump, base, count)
        res = an.sweep_cut_angle(sc, grid, spec=params.spec)
        rows = [(math.degrees(a), m.peak_value) for a, m in zip(res.values, res.metrics)]
        out.tables.append(Table(f"thickness_{t:g}mm", ["cut_angle_deg", "peak[arb. units]"], rows))
        out.metadata[f"thickness_{t:g}mm"] = {"verdicts": res.verdicts, **res.metadata}
    return out


def fig_7(params):
    out = FigureOutput("7", "aperture-limited axial biphoton excitation for several delta", "z/l_eq")
    base = _collinear_crystal(2e-3, params)
    lens = LensSystem(FIG7_FOCAL_LENGTH)
    ideal = ex.BiphotonScenario(base, params.pump, lens)
    out.curves.append(_centered_entry("ideal", "no aperture",
                                      an.sample_axial(ideal, params.samples, spec=params.spec)))
    cone = ideal.cone_angle()
    for d in FIG7_DELTAS:
        ap = aperture_for_ratio(d, cone, lens.focal_length)
        sc = replace(ideal, lens=replace(lens, aperture=ap), configuration="imaging-aperture")
        curve = an.sample_axial(sc, params.samples, spec=params.spec)
        out.curves.append(_centered_entry(f"delta_{d:g}", f"delta = {d:g}", curve))
    out.metadata.update(deltas=list(FIG7_DELTAS), focal_length_m=lens.focal_length, cone_angle_rad=cone)
    return out


def _bandwidth_curves(thickness_mm, params):
    crys = cr.CrystalSpec(thickness_mm * 1e-3, math.radians(BEST_CUT_DEG[thickness_mm]), params.material)
    entries = []
    for bw in BANDWIDTHS:
        sc = ex.BiphotonScenario(crys, params.pump, filter=SpectralFilter(bw),
                                 configuration="imaging-bandwidth")
        curve = an.sample_axial(sc, params.samples, spec=params.spec)
        nm = SpectralFilter(bw).wavelength_width(params.pump.degenerate_wavelength) * 1e9
        entries.append(_centered_entry(f"bw_{bw:g}", f"BW = {bw:g} ({nm:.0f} nm)", curve))
    return crys, entries


def _fig_8(fid, thickness_mm, params):
    crys, entries = _bandwidth_curves(thickness_mm, params)
    out = FigureOutput(fid, f"normalised axial biphoton excitation versus bandwidth ({thickness_mm:g} mm)",
                       "z/l_eq", entries, normalize_plot=True)
    out.metadata.update(thickness_mm=thickness_mm, cut_angle_deg=math.degrees(crys.cut_angle),
                        bandwidths=list(BANDWIDTHS), filter_normalization="area",
                        wavelength_widths_nm=[SpectralFilter(b).wavelength_width(
                            params.pump.degenerate_wavelength) * 1e9 for b in BANDWIDTHS])
    return out


def fig_8a(params):
    return _fig_8("8a", 10.0, params)


def fig_8b(params):
    return _fig_8("8b", 2.0, params)


def fig_9(params):
    out = FigureOutput("9", "relative axial peak versus bandwidth", "BW (fraction of omega_o)")
    for t in (2.0, 10.0):
        crys = cr.CrystalSpec(t * 1e-3, math.radians(BEST_CUT_DEG[t]), params.material)
        sc = ex.BiphotonScenario(crys, params.pump, configuration="imaging-bandwidth")
        res = an.sweep_bandwidth(sc, BANDWIDTHS, params.samples, spec=params.spec)
        area = res.metadata["area_peaks"]
        trans = res.metadata["transmission_peaks"]
        rows = [(bw, tr / trans[-1], a / area[0]) for bw, tr, a in zip(res.values, trans, area)]
        out.tables.append(Table(f"thickness_{t:g}mm",
                                ["bandwidth_fraction", "peak_transmission_rel", "peak_area_rel"], rows))
        out.metadata[f"thickness_{t:g}mm"] = {"cut_angle_deg": BEST_CUT_DEG[t], "verdicts": res.verdicts,
                                              "fwhm_m": [m.fwhm for m in res.metrics],
                                              "fractional_narrowing": res.metadata["fractional_narrowing"]}
    return out


FIGURES = {"2a": fig_2a, "2b": fig_2b, "4": fig_4, "5": fig_5, "6": fig_6, "7": fig_7,
           "8a": fig_8a, "8b": fig_8b, "9": fig_9}


def run(fid, params=None):
    if fid not in FIGURES:
        raise KeyError(fid)
    return FIGURES[fid](params or FigureParams())
