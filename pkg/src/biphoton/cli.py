"""Command-line entry point.

    biphoton figure <id> [--out DIR] [--samples N] [--tol T]
    biphoton run --config FILE [--out DIR]
    biphoton material --show [--material NAME_OR_PATH]

Exit codes: 0 success, 2 configuration error, 3 numerical non-convergence,
4 physics-domain error.
"""
import argparse
import hashlib
import json
import logging
import math
import sys

import numpy as np

from . import analysis as an
from . import config as cfgmod
from . import crystal as cr
from . import excitation as ex
from . import figures
from . import io
from .errors import AmbiguousCurveError, BiphotonError, ConfigError, NonConvergenceError
from .kernels import BACKEND
from .optics import scaled_coords

log = logging.getLogger("biphoton")


def _hash_of(obj):
    text = json.dumps(io.jsonable(obj), sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(text.encode()).hexdigest()[:16]


def write_figure(output, out_dir):
    """Write CSVs, metadata, manifest and plot script for a :class:`figures.FigureOutput`."""
    out = io.ensure_dir(out_dir)
    fid = output.figure
    files, labels, entries = [], [], []
    fig_hash = _hash_of({"figure": fid, "metadata": output.metadata})
    for k, c in enumerate(output.curves):
        name = f"fig{fid}_{k:02d}_{c.name}.csv"
        io.write_curve_csv(out / name, c.curve, c.name, fig_hash)
        files.append(name)
        labels.append(c.label)
        entries.append({"file": name, "name": c.name, "label": c.label,
                        "metrics": c.metrics.as_dict() if c.metrics else None, "note": c.note,
                        "curve_metadata": c.curve.metadata})
    for k, t in enumerate(output.tables):
        name = f"fig{fid}_table_{k:02d}_{t.name}.csv"
        io.write_table_csv(out / name, t.name, t.columns, t.rows, fig_hash)
        files.append(name)
        labels.append(t.name)
        entries.append({"file": name, "name": t.name, "columns": t.columns})
    meta = {"figure": fid, "title": output.title, "scenario_hash": fig_hash,
            "parameters": output.metadata, "curves": entries}
    io.write_json(out / f"fig{fid}_metadata.json", meta)
    io.write_json(out / f"fig{fid}_manifest.json",
                  {"figure": fid, "files": files + [f"fig{fid}_metadata.json", f"plot_fig{fid}.py"]})
    io.write_plot_script(out / f"plot_fig{fid}.py", f"figure {fid}", files, labels, output.xlabel,
                         normalize=output.normalize_plot)
    return [out / f for f in files]


def run_figure(fid, out_dir, samples=an.DEFAULT_SAMPLES, tol=None):
    if fid not in figures.FIGURE_IDS:
        raise ConfigError(f"unknown figure id {fid!r}; choose from {', '.join(figures.FIGURE_IDS)}")
    if samples < an.MIN_SAMPLES:
        raise ConfigError(f"--samples must be at least {an.MIN_SAMPLES}")
    spec = ex.DEFAULT_SPEC if tol is None else ex.DEFAULT_SPEC.replace(rtol=tol)
    output = figures.run(fid, figures.FigureParams(samples=samples, spec=spec))
    return write_figure(output, out_dir)


def _transverse_curve(scenario, cfg, spec):
    lam_p = scenario.pump.wavelength
    if scenario.configuration == "focal":
        x_c = scaled_coords(0.0, 0.0, lam_p, scenario.lens).x_c
        lo, hi = (cfg.window_lo, cfg.window_hi) if cfg.window_lo is not None else (-1.5, 1.5)
        x = np.linspace(lo, hi, cfg.samples) * x_c
        vals = ex.gb2_focal(x, 0.0 * x, scenario, spec=spec)
        return ex.Distribution1D("transverse", x, vals, "x_c", x_c, {"scenario": scenario.describe()})
    if scenario.configuration == "imaging-pump-profile":
        b = scenario.pump.width
        lo, hi = (cfg.window_lo, cfg.window_hi) if cfg.window_lo is not None else (-2.0, 2.0)
        x = np.linspace(lo * b, hi * b, cfg.samples)
        vals, rep = ex.gb2_imaging_pump_profile(x, scenario, spec=spec, return_report=True)
        return ex.Distribution1D("transverse", x, vals, "raw", 1.0,
                                 {"scenario": scenario.describe(), "quadrature": rep})
    raise ConfigError(f"field 'axis': configuration {scenario.configuration!r} has no transverse "
                      "dependence at the image plane; use axis 'axial'")


def run_scenario(cfg, out_dir=None):
    """Single-scenario run: one CSV, a metrics JSON and a manifest."""
    scenario = cfgmod.build_scenario(cfg)
    # degenerate emission must be phase matched for every configuration
    cone = cr.emission_cone_angle(scenario.crystal, scenario.pump)
    spec = cfg.quadrature()
    axis = cfg.axis or ("transverse" if cfg.configuration == "imaging-pump-profile" else "axial")
    if axis == "axial":
        if cfg.configuration == "imaging-pump-profile":
            raise ConfigError("field 'axis': the pump-profile configuration is computed at z = 0 only")
        window = None
        if cfg.window_lo is not None:
            _, length = an._axial_unit(scenario)
            window = (cfg.window_lo * length, cfg.window_hi * length)
        curve = an.sample_axial(scenario, cfg.samples, window=window, spec=spec)
    else:
        curve = _transverse_curve(scenario, cfg, spec)
    warnings = []
    try:
        metrics = an.fwhm(curve)
    except AmbiguousCurveError as exc:
        metrics = None
        warnings.append(f"width not extracted: {exc}")
    report = {"config": cfg, "scenario": scenario.describe(), "cone_angle_rad": cone,
              "metrics": metrics.as_dict() if metrics else None,
              "quadrature": curve.metadata.get("quadrature"), "warnings": warnings}
    if cfg.configuration == "imaging-pump-profile":
        q = curve.metadata["quadrature"]
        report["pump_validity"] = {"bound_m": q["validity_bound_m"], "valid": q["valid"],
                                   "warning": q["warning"]}
        if q["warning"]:
            warnings.append(q["warning"])
        if metrics is not None:
            intensity_fwhm = scenario.pump.width * math.sqrt(2 * math.log(2))
            report["pump_image"] = {"intensity_fwhm_m": intensity_fwhm,
                                    "exponent": (intensity_fwhm / metrics.fwhm) ** 2}
    h = cfg.digest()
    out = io.ensure_dir(out_dir or cfg.output_dir)
    io.write_curve_csv(out / "curve.csv", curve, cfg.configuration, h)
    io.write_json(out / "metrics.json", {"scenario_hash": h, **report})
    io.write_json(out / "manifest.json", {"scenario_hash": h, "files": ["curve.csv", "metrics.json"]})
    return [out / "curve.csv", out / "metrics.json", out / "manifest.json"]


def show_material(source):
    mat = cr.load_material(source)
    print(json.dumps(mat.to_dict(), indent=2, sort_keys=True))


def build_parser():
    p = argparse.ArgumentParser(prog="biphoton", description="Biphoton, one- and two-photon excitation distributions.")
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True)

    f = sub.add_parser("figure", help="reproduce one figure's curves as CSV")
    f.add_argument("id", help=f"one of {', '.join(figures.FIGURE_IDS)}")
    f.add_argument("--out", default=None, help="output directory (default out/fig<id>)")
    f.add_argument("--samples", type=int, default=an.DEFAULT_SAMPLES)
    f.add_argument("--tol", type=float, default=None, help="relative quadrature tolerance")

    r = sub.add_parser("run", help="run one scenario from a JSON config")
    r.add_argument("--config", required=True)
    r.add_argument("--out", default=None)

    m = sub.add_parser("material", help="print the active dispersion data")
    m.add_argument("--show", action="store_true", required=True)
    m.add_argument("--material", default="bbo", help="bundled name or JSON path")
    return p


def main(argv=None):
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(asctime)s %(levelname)s %(message)s", stream=sys.stderr)
    try:
        if args.command == "figure":
            if args.tol is not None and not args.tol > 0:
                raise ConfigError("--tol must be positive")
            written = run_figure(args.id, args.out or f"out/fig{args.id}", args.samples, args.tol)
        elif args.command == "run":
            cfg = cfgmod.load(args.config)
            written = run_scenario(cfg, args.out)
        else:
            try:
                show_material(args.material)
            except (ValueError, OSError) as exc:
                raise ConfigError(str(exc)) from None
            return 0
    except NonConvergenceError as exc:
        print(f"error: {exc}", file=sys.stderr)
        if exc.error is not None:
            print(f"achieved error estimate: {float(np.max(exc.error)):.3g}", file=sys.stderr)
        return exc.exit_code
    except BiphotonError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.exit_code
    log.info("wrote %d files (kernel backend: %s)", len(written), BACKEND)
    for w in written:
        print(w)
    return 0


if __name__ == "__main__":
    sys.exit(main())
