"""Time the numba kernels against their numpy twins, plus one end-to-end curve per backend.

    python3 benchmarks/bench_kernels.py [--repeat N] [--skip-curve]

The end-to-end part runs a subprocess with BIPHOTON_DISABLE_NUMBA=1 so the
numpy path is timed exactly as a user would get it.
"""
import argparse
import json
import os
import subprocess
import sys
import time

import numpy as np

from biphoton import kernels

CURVE_SNIPPET = """
import json, math, time
from biphoton import crystal as cr, excitation as ex, kernels
from biphoton.analysis import sample_axial
from biphoton.optics import PumpSpec
p = PumpSpec(532e-9)
probe = cr.CrystalSpec(2e-3, 0.4)
c = probe.with_cut_angle(cr.collinear_cut_angle(p, probe))
s = ex.BiphotonScenario(c, p)
sample_axial(s, 65)
t0 = time.perf_counter()
curve = sample_axial(s, 257)
print(json.dumps({"backend": kernels.BACKEND, "seconds": time.perf_counter() - t0,
                  "peak": float(curve.values.max())}))
"""


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def bench_kernels(repeat):
    rng = np.random.default_rng(1)
    rows = []
    for m, n in ((257, 512), (257, 4096), (2048, 2048)):
        c2 = rng.uniform(-50, 50, m)
        c1 = rng.uniform(-50, 50, m)
        x = np.sort(rng.uniform(-1, 1, n))
        w = rng.normal(size=n) + 0j
        # warm up the JIT
        kernels.quadratic_phase_sum_numba(c2[:2], c1[:2], x[:4], w[:4])
        kernels.quadratic_phase_matrix_numba(c2[:2], c1[:2], x[:4])
        for name in ("sum", "matrix"):
            if name == "sum":
                f_nb = lambda: kernels.quadratic_phase_sum_numba(c2, c1, x, w)
                f_np = lambda: kernels.quadratic_phase_sum_numpy(c2, c1, x, w)
            else:
                f_nb = lambda: kernels.quadratic_phase_matrix_numba(c2, c1, x)
                f_np = lambda: kernels.quadratic_phase_matrix_numpy(c2, c1, x)
            diff = float(np.max(np.abs(f_nb() - f_np())))
            t_nb, t_np = best_of(f_nb, repeat), best_of(f_np, repeat)
            rows.append({"kernel": name, "rows": m, "nodes": n, "numba_s": t_nb, "numpy_s": t_np,
                         "speedup": t_np / t_nb, "max_abs_diff": diff})
    return rows


def bench_curve():
    out = []
    for disable in ("0", "1"):
        env = dict(os.environ, BIPHOTON_DISABLE_NUMBA=disable)
        res = subprocess.run([sys.executable, "-c", CURVE_SNIPPET], env=env, capture_output=True,
                             text=True, check=True)
        out.append(json.loads(res.stdout.strip().splitlines()[-1]))
    return out


def main(argv=None):
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--repeat", type=int, default=5)
    p.add_argument("--skip-curve", action="store_true")
    args = p.parse_args(argv)
    if not kernels.HAVE_NUMBA:
        print("numba unavailable or disabled; nothing to compare", file=sys.stderr)
        return 1
    print(f"{'kernel':<8}{'rows':>6}{'nodes':>7}{'numba ms':>11}{'numpy ms':>11}{'speedup':>9}{'max|diff|':>11}")
    for r in bench_kernels(args.repeat):
        print(f"{r['kernel']:<8}{r['rows']:>6}{r['nodes']:>7}{r['numba_s'] * 1e3:>11.2f}"
              f"{r['numpy_s'] * 1e3:>11.2f}{r['speedup']:>9.2f}{r['max_abs_diff']:>11.1e}")
    if not args.skip_curve:
        print("\nend-to-end: 257-sample ideal-imaging axial curve (2 mm, collinear)")
        for r in bench_curve():
            print(f"  {r['backend']:<6} {r['seconds']:.3f} s  peak {r['peak']:.12e}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
