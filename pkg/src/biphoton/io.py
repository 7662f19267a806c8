"""Deterministic file output: self-describing CSVs, sorted JSON, plot scripts."""
import dataclasses
import json
import math
from pathlib import Path

import numpy as np

from .errors import ConfigError

COORDINATE_LABEL = {"z_c": "z/z_c", "x_c": "x/x_c", "l_eq": "z/l_eq", "raw": "coordinate (m)"}


def _fmt(v):
    return repr(float(v))


def jsonable(obj):
    """Convert numpy scalars/arrays and non-finite floats into plain JSON values."""
    if isinstance(obj, dict):
        return {str(k): jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [jsonable(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return [jsonable(v) for v in obj.tolist()]
    if isinstance(obj, (np.bool_, bool)):
        return bool(obj)
    if isinstance(obj, (np.integer,)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        v = float(obj)
        if math.isnan(v):
            return "nan"
        if math.isinf(v):
            return "inf" if v > 0 else "-inf"
        return v
    if hasattr(obj, "as_dict"):
        return jsonable(obj.as_dict())
    if dataclasses.is_dataclass(obj) and not isinstance(obj, type):
        return jsonable(dataclasses.asdict(obj))
    return obj


def ensure_dir(path):
    p = Path(path)
    try:
        p.mkdir(parents=True, exist_ok=True)
    except OSError as exc:
        raise ConfigError(f"output directory {path} is not writable: {exc.strerror}") from None
    if not p.is_dir():
        raise ConfigError(f"output path {path} is not a directory")
    return p


def write_json(path, obj):
    text = json.dumps(jsonable(obj), sort_keys=True, indent=2) + "\n"
    Path(path).write_text(text)
    return Path(path)


def write_curve_csv(path, curve, name, scenario_hash, values_label="value"):
    """One curve per file; coordinates in the curve's normalisation unit."""
    x = curve.normalized_coordinates
    lines = [f"# name={name}",
             f"# axis={curve.axis}",
             f"# unit={curve.normalization_unit}",
             f"# unit_length_m={_fmt(curve.unit_length)}",
             f"# columns=coordinate[{COORDINATE_LABEL[curve.normalization_unit]}],{values_label}[arb. units]",
             f"# scenario_hash={scenario_hash}",
             "coordinate,value"]
    lines += [f"{_fmt(a)},{_fmt(b)}" for a, b in zip(x, curve.values)]
    Path(path).write_text("\n".join(lines) + "\n")
    return Path(path)


def write_table_csv(path, name, columns, rows, scenario_hash, unit="raw"):
    lines = [f"# name={name}", f"# unit={unit}", f"# columns={','.join(columns)}",
             f"# scenario_hash={scenario_hash}", ",".join(c.split("[")[0] for c in columns)]
    lines += [",".join(_fmt(v) for v in row) for row in rows]
    Path(path).write_text("\n".join(lines) + "\n")
    return Path(path)


PLOT_TEMPLATE = '''"""Render {title} from the CSV files next to this script (needs matplotlib)."""
from pathlib import Path

import numpy as np
import matplotlib
matplotlib.use("Agg")
import matplotlib.pyplot as plt

HERE = Path(__file__).resolve().parent
FILES = {files!r}
LABELS = {labels!r}
NORMALIZE = {normalize!r}

fig, ax = plt.subplots(figsize=(6, 4))
for name, label in zip(FILES, LABELS):
    rows = [ln for ln in (HERE / name).read_text().splitlines() if not ln.startswith("#")][1:]
    data = np.array([[float(v) for v in ln.split(",")] for ln in rows])
    y = data[:, 1] / data[:, 1].max() if NORMALIZE else data[:, 1]
    ax.plot(data[:, 0], y, label=label)
ax.set_xlabel({xlabel!r})
ax.set_ylabel({ylabel!r})
ax.legend()
fig.tight_layout()
out = HERE / {png!r}
fig.savefig(out, dpi=150)
print(out)
'''


def write_plot_script(path, title, files, labels, xlabel, ylabel="arb. units", normalize=False):
    text = PLOT_TEMPLATE.format(title=title, files=list(files), labels=list(labels), xlabel=xlabel,
                                ylabel=ylabel, normalize=bool(normalize),
                                png=Path(path).with_suffix(".png").name)
    Path(path).write_text(text)
    return Path(path)
