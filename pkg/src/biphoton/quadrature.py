"""Adaptive Gauss-Legendre quadrature for complex, oscillatory integrands.

Integrands are vectorised: ``f(x)`` receives a 1-D array of nodes and returns
an array whose *last* axis runs over those nodes.  Leading axes are carried
through, so a whole sampled curve (one integral per coordinate) is integrated
in one pass and refined wherever any of its components needs it.

Panels are bisected until the difference between the one-panel and the
two-half-panel estimates fits the panel's share of the tolerance budget.
Accumulation is done in panel order, so results are bit-stable for a fixed
spec.
"""
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import NonConvergenceError


# panel differences below this multiple of the panel's integral of |f| count as converged
ROUNDOFF = 100 * np.finfo(float).eps
# cap on node values in one refinement sweep once refinement has grown past the initial panels
MAX_WORK_ELEMS = 1 << 25


@dataclass(frozen=True)
class QuadratureSpec:
    rtol: float = 1e-6
    max_depth: int = 30
    order: int = 32
    atol: float = 0.0
    initial_panels: int = 1

    def __post_init__(self):
        if not self.rtol > 0:
            raise ValueError("rtol must be positive")
        if self.max_depth < 1:
            raise ValueError("max_depth must be >= 1")
        if self.order < 2:
            raise ValueError("order must be >= 2")
        if self.initial_panels < 1:
            raise ValueError("initial_panels must be >= 1")

    def replace(self, **kw):
        d = dict(self.__dict__)
        d.update(kw)
        return QuadratureSpec(**d)


@dataclass
class QuadratureResult:
    value: object
    error: float
    panels: int
    evaluations: int

    def report(self):
        return {"error": float(self.error), "panels": int(self.panels),
                "evaluations": int(self.evaluations)}


@lru_cache(maxsize=None)
def gauss_legendre(order):
    x, w = np.polynomial.legendre.leggauss(order)
    x.flags.writeable = False
    w.flags.writeable = False
    return x, w


def composite_nodes(a, b, panels, order=32):
    """Nodes and weights of a fixed composite Gauss-Legendre rule."""
    x0, w0 = gauss_legendre(order)
    edges = np.linspace(a, b, int(panels) + 1)
    half = 0.5 * np.diff(edges)
    mid = 0.5 * (edges[1:] + edges[:-1])
    return (mid[:, None] + half[:, None] * x0).ravel(), (half[:, None] * w0).ravel()


def _panel_values(f, lo, hi, x0, w0):
    """Integrate ``f`` and ``|f|`` over each ``[lo[k], hi[k]]``; shapes (..., K) and (K,)."""
    half = 0.5 * (hi - lo)
    mid = 0.5 * (hi + lo)
    nodes = (mid[:, None] + half[:, None] * x0).ravel()
    vals = np.asarray(f(nodes))
    vals = vals.reshape(vals.shape[:-1] + (lo.size, x0.size))
    mag = (np.abs(vals) @ w0 * half).reshape(-1, lo.size).max(axis=0)
    return vals @ w0 * half, mag


def integrate_1d(f, a, b, spec=None):
    """Adaptive composite Gauss-Legendre integral of ``f`` over ``[a, b]``.

    Returns a :class:`QuadratureResult` whose ``error`` is the summed
    coarse-vs-refined panel difference, measured in the max-norm over the
    leading (vector) axes.  Raises :class:`NonConvergenceError` when a panel
    would have to be split beyond ``spec.max_depth``.
    """
    spec = spec or QuadratureSpec()
    a = float(a)
    b = float(b)
    if not b > a:
        raise ValueError(f"integrate_1d needs a < b, got [{a}, {b}]")
    x0, w0 = gauss_legendre(spec.order)
    length = b - a

    edges = np.linspace(a, b, spec.initial_panels + 1)
    lo, hi = edges[:-1], edges[1:]
    depth = np.zeros(lo.size, dtype=int)
    coarse, _ = _panel_values(f, lo, hi, x0, w0)
    evals = lo.size * spec.order
    width = max(1, int(np.size(coarse) // lo.size))

    done_lo, done_val, done_err = [], [], []
    while lo.size:
        if lo.size > spec.initial_panels and 2 * lo.size * spec.order * width > MAX_WORK_ELEMS:
            raise NonConvergenceError(
                f"quadrature on [{a:.6g}, {b:.6g}] needs more than {MAX_WORK_ELEMS:.3g} node values "
                f"per refinement step at rtol={spec.rtol:g}; loosen the tolerance")
        mid = 0.5 * (lo + hi)
        both, mag = _panel_values(f, np.concatenate([lo, mid]), np.concatenate([mid, hi]), x0, w0)
        evals += 2 * lo.size * spec.order
        left, right = both[..., :lo.size], both[..., lo.size:]
        fine = left + right
        diff = np.abs(fine - coarse)
        err = diff.reshape(-1, lo.size).max(axis=0)

        total = fine.sum(axis=-1)
        if done_val:
            total = total + np.sum(done_val, axis=0)
        scale = float(np.max(np.abs(total))) if np.size(total) else 0.0
        budget = max(spec.rtol * scale, spec.atol) * (hi - lo) / length
        # differences at the level of summation roundoff cannot be refined away (zero integrals)
        noise = ROUNDOFF * (mag[:lo.size] + mag[lo.size:])
        ok = (err <= np.maximum(budget, noise)) | (err == 0.0)

        for k in np.flatnonzero(ok):
            done_lo.append(lo[k])
            done_val.append(fine[..., k])
            done_err.append(err[k])

        bad = ~ok
        if np.any(depth[bad] + 1 > spec.max_depth):
            for k in np.flatnonzero(bad):
                done_lo.append(lo[k])
                done_val.append(fine[..., k])
                done_err.append(err[k])
            value, error = _accumulate(done_lo, done_val, done_err)
            raise NonConvergenceError(
                f"quadrature on [{a:.6g}, {b:.6g}] did not reach rtol={spec.rtol:g} "
                f"within depth {spec.max_depth} (achieved error {error:.3g})",
                estimate=value, error=error)

        lo_b, hi_b, mid_b = lo[bad], hi[bad], mid[bad]
        lo = np.concatenate([lo_b, mid_b])
        hi = np.concatenate([mid_b, hi_b])
        coarse = np.concatenate([left[..., bad], right[..., bad]], axis=-1)
        depth = np.concatenate([depth[bad] + 1, depth[bad] + 1])

    value, error = _accumulate(done_lo, done_val, done_err)
    return QuadratureResult(value=value, error=error, panels=len(done_lo), evaluations=evals)


def _accumulate(los, vals, errs):
    order = np.argsort(np.asarray(los), kind="stable")
    stacked = np.stack([vals[i] for i in order], axis=-1)
    value = stacked.sum(axis=-1)
    if np.ndim(value) == 0:
        value = value[()]
    return value, float(np.sum(errs))


def integrate_2d(f, x_range, y_range, spec=None):
    """Nested adaptive integral over a rectangle.

    ``f(x, y)`` gets node arrays ``x`` (outer) and ``y`` (inner) and returns
    values on their tensor grid with trailing axes ``(len(x), len(y))``.
    The tolerance budget is split evenly between the two levels.
    """
    spec = spec or QuadratureSpec()
    half = spec.replace(rtol=spec.rtol / 2, atol=spec.atol / 2)
    inner_err = [0.0]
    inner_evals = [0]

    def outer(xs):
        r = integrate_1d(lambda ys: f(xs, ys), y_range[0], y_range[1], half)
        inner_err[0] = max(inner_err[0], r.error)
        inner_evals[0] += r.evaluations
        return r.value

    r = integrate_1d(outer, x_range[0], x_range[1], half)
    err = r.error + inner_err[0] * (x_range[1] - x_range[0])
    return QuadratureResult(value=r.value, error=err, panels=r.panels,
                            evaluations=r.evaluations + inner_evals[0])
