"""Run configuration: JSON with units spelled out in the field names.

Lengths arrive in mm/um/nm and angles in degrees; :func:`build_scenario`
converts to SI and radians.  Every validation failure names its field.
"""
import hashlib
import json
import math
from dataclasses import asdict, dataclass, fields
from pathlib import Path
from typing import Optional

from . import crystal as cr
from .errors import ConfigError
from .excitation import CONFIGURATIONS, BiphotonScenario
from .optics import LensSystem, PumpSpec, SpectralFilter, aperture_for_ratio
from .quadrature import QuadratureSpec


@dataclass
class RunConfig:
    configuration: str = "imaging-ideal"
    material: str = "bbo"
    pump_wavelength_nm: float = 532.0
    pump_width_um: Optional[float] = None
    crystal_thickness_mm: float = 2.0
    cut_angle_deg: Optional[float] = None
    cut_offset_deg: float = 0.0
    focal_length_mm: Optional[float] = 100.0
    aperture_mm: Optional[float] = None
    aperture_ratio: Optional[float] = None
    crystal_to_lens_mm: float = 0.0
    magnification: float = 1.0
    bandwidth_fraction: float = 0.0
    filter_normalization: str = "area"
    axis: Optional[str] = None
    window_lo: Optional[float] = None
    window_hi: Optional[float] = None
    samples: int = 257
    rtol: float = 1e-6
    max_depth: int = 30
    order: int = 32
    output_dir: str = "out"
    figure: Optional[str] = None

    def canonical(self):
        """Stable JSON text of the physical inputs (output location excluded)."""
        d = asdict(self)
        d.pop("output_dir")
        return json.dumps(d, sort_keys=True, separators=(",", ":"))

    def digest(self):
        return hashlib.sha256(self.canonical().encode()).hexdigest()[:16]

    def quadrature(self):
        return QuadratureSpec(rtol=self.rtol, max_depth=self.max_depth, order=self.order)


_POSITIVE = ("pump_wavelength_nm", "crystal_thickness_mm", "samples", "rtol", "max_depth", "order",
             "magnification")
_POSITIVE_OPTIONAL = ("pump_width_um", "focal_length_mm", "aperture_mm", "aperture_ratio")


def _fail(name, msg):
    raise ConfigError(f"field '{name}': {msg}")


def validate(cfg):
    if cfg.configuration not in CONFIGURATIONS:
        _fail("configuration", f"must be one of {list(CONFIGURATIONS)}, got {cfg.configuration!r}")
    for name in _POSITIVE:
        v = getattr(cfg, name)
        if isinstance(v, bool) or not isinstance(v, (int, float)) or not math.isfinite(v) or v <= 0:
            _fail(name, f"must be a positive number, got {v!r}")
    for name in _POSITIVE_OPTIONAL:
        v = getattr(cfg, name)
        if v is not None and (isinstance(v, bool) or not isinstance(v, (int, float)) or not v > 0):
            _fail(name, f"must be a positive number or null, got {v!r}")
    for name in ("samples", "max_depth", "order"):
        if int(getattr(cfg, name)) != getattr(cfg, name):
            _fail(name, "must be an integer")
    if cfg.samples < 64:
        _fail("samples", "at least 64 samples are needed for width extraction")
    if not 400 <= cfg.pump_wavelength_nm <= 1000:
        _fail("pump_wavelength_nm", "pump and degenerate wavelengths must stay inside the 400-2000 nm dispersion window")
    if cfg.cut_angle_deg is not None and not 0 < cfg.cut_angle_deg < 90:
        _fail("cut_angle_deg", f"must lie in (0, 90), got {cfg.cut_angle_deg}")
    if not isinstance(cfg.cut_offset_deg, (int, float)):
        _fail("cut_offset_deg", "must be a number")
    if cfg.crystal_to_lens_mm < 0:
        _fail("crystal_to_lens_mm", "must be non-negative")
    if not 0 <= cfg.bandwidth_fraction < 2:
        _fail("bandwidth_fraction", f"must lie in [0, 2), got {cfg.bandwidth_fraction}")
    if cfg.filter_normalization not in ("area", "transmission"):
        _fail("filter_normalization", "must be 'area' or 'transmission'")
    if cfg.axis not in (None, "axial", "transverse"):
        _fail("axis", "must be 'axial', 'transverse' or null")
    if cfg.aperture_mm is not None and cfg.aperture_ratio is not None:
        _fail("aperture_ratio", "give either aperture_mm or aperture_ratio, not both")
    if cfg.configuration in ("focal", "imaging-aperture"):
        if cfg.aperture_mm is None and cfg.aperture_ratio is None:
            _fail("aperture_mm", f"required for configuration {cfg.configuration!r}")
        if cfg.focal_length_mm is None:
            _fail("focal_length_mm", f"required for configuration {cfg.configuration!r}")
    if cfg.configuration == "imaging-pump-profile" and cfg.pump_width_um is None:
        _fail("pump_width_um", "required for the pump-profile configuration")
    if cfg.configuration != "imaging-bandwidth" and cfg.bandwidth_fraction != 0:
        _fail("bandwidth_fraction", f"must be 0 for configuration {cfg.configuration!r}")
    if (cfg.window_lo is None) != (cfg.window_hi is None):
        _fail("window_hi", "window_lo and window_hi go together")
    if cfg.window_lo is not None and not cfg.window_lo < cfg.window_hi:
        _fail("window_hi", "must exceed window_lo")
    return cfg


def from_dict(data):
    if not isinstance(data, dict):
        raise ConfigError("configuration must be a JSON object")
    known = {f.name for f in fields(RunConfig)}
    unknown = sorted(set(data) - known)
    if unknown:
        raise ConfigError(f"unknown field(s) {unknown}; known fields are {sorted(known)}")
    try:
        cfg = RunConfig(**data)
    except TypeError as exc:
        raise ConfigError(str(exc)) from None
    return validate(cfg)


def load(path):
    p = Path(path)
    try:
        text = p.read_text()
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc.strerror}") from None
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"config {path} is not valid JSON: {exc}") from None
    return from_dict(data)


def build_scenario(cfg):
    """Translate a validated :class:`RunConfig` into a :class:`BiphotonScenario` in SI units."""
    try:
        material = cr.load_material(cfg.material)
    except (ValueError, OSError) as exc:
        raise ConfigError(f"field 'material': {exc}") from None
    pump = PumpSpec(cfg.pump_wavelength_nm * 1e-9,
                    None if cfg.pump_width_um is None else cfg.pump_width_um * 1e-6)
    thickness = cfg.crystal_thickness_mm * 1e-3
    probe = cr.CrystalSpec(thickness, math.radians(30.0), material)
    if cfg.cut_angle_deg is None:
        angle = cr.collinear_cut_angle(pump, probe)
    else:
        angle = math.radians(cfg.cut_angle_deg)
    angle += math.radians(cfg.cut_offset_deg)
    crystal = cr.CrystalSpec(thickness, angle, material)
    f = math.inf if cfg.focal_length_mm is None else cfg.focal_length_mm * 1e-3
    aperture = None if cfg.aperture_mm is None else cfg.aperture_mm * 1e-3
    if cfg.aperture_ratio is not None:
        if math.isinf(f):
            _fail("aperture_ratio", "needs a finite focal_length_mm")
        cone = cr.emission_cone_angle(crystal, pump)
        aperture = aperture_for_ratio(cfg.aperture_ratio, cone, f, cfg.magnification)
    lens = LensSystem(f, aperture, cfg.crystal_to_lens_mm * 1e-3, cfg.magnification)
    flt = SpectralFilter(cfg.bandwidth_fraction, cfg.filter_normalization)
    return BiphotonScenario(crystal, pump, lens, flt, cfg.configuration)
