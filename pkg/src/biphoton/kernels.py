"""Hot inner loops.

Every integral in the package that dominates runtime is a sum of the form

    out[m] = sum_n w[n] * exp(-1j * (c2[m] * x[n]**2 + c1[m] * x[n]))

(quadratic-phase sums): the diffraction kernel over the pupil, the ideal
imaging q-integral over a whole axial curve, and the Fourier pairs of the
focal-region reduction.  Two entry points are exposed:

``quadratic_phase_matrix``  the full ``(m, n)`` matrix of phase factors, for
                            adaptive quadrature that needs node values.
``quadratic_phase_sum``     the contracted sum, for fixed node sets.

Each has a numba implementation (parallel over rows, sequential within a
row, so results do not depend on thread count) and a numpy twin.  The twin
is selected when numba is missing or ``BIPHOTON_DISABLE_NUMBA=1``.
"""
import numpy as np

from ._accel import HAVE_NUMBA, njit, prange

_CHUNK_ELEMS = 1 << 22


def _as_rows(c2, c1):
    c2 = np.atleast_1d(np.asarray(c2, dtype=np.float64))
    c1 = np.atleast_1d(np.asarray(c1, dtype=np.float64))
    c2, c1 = np.broadcast_arrays(c2, c1)
    return np.ascontiguousarray(c2.ravel()), np.ascontiguousarray(c1.ravel())


# --- numpy twins -----------------------------------------------------------

def quadratic_phase_matrix_numpy(c2, c1, x):
    c2, c1 = _as_rows(c2, c1)
    x = np.asarray(x, dtype=np.float64)
    return np.exp(-1j * (c2[:, None] * (x * x)[None, :] + c1[:, None] * x[None, :]))


def quadratic_phase_sum_numpy(c2, c1, x, w):
    c2, c1 = _as_rows(c2, c1)
    x = np.asarray(x, dtype=np.float64)
    w = np.asarray(w, dtype=np.complex128)
    x2 = x * x
    out = np.empty(c2.size, dtype=np.complex128)
    step = max(1, _CHUNK_ELEMS // max(x.size, 1))
    for s in range(0, c2.size, step):
        ph = c2[s:s + step, None] * x2[None, :] + c1[s:s + step, None] * x[None, :]
        out[s:s + step] = np.exp(-1j * ph) @ w
    return out


# --- numba kernels ---------------------------------------------------------

@njit(parallel=True, cache=True)
def _qp_matrix_nb(c2, c1, x):
    m = c2.size
    n = x.size
    out = np.empty((m, n), dtype=np.complex128)
    for i in prange(m):
        a = c2[i]
        b = c1[i]
        for j in range(n):
            xj = x[j]
            ph = (a * xj + b) * xj
            out[i, j] = complex(np.cos(ph), -np.sin(ph))
    return out


@njit(parallel=True, cache=True)
def _qp_sum_nb(c2, c1, x, wr, wi):
    m = c2.size
    n = x.size
    re = np.empty(m)
    im = np.empty(m)
    for i in prange(m):
        a = c2[i]
        b = c1[i]
        sr = 0.0
        si = 0.0
        for j in range(n):
            xj = x[j]
            ph = (a * xj + b) * xj
            cs = np.cos(ph)
            sn = -np.sin(ph)
            sr += wr[j] * cs - wi[j] * sn
            si += wr[j] * sn + wi[j] * cs
        re[i] = sr
        im[i] = si
    return re, im


def quadratic_phase_matrix_numba(c2, c1, x):
    c2, c1 = _as_rows(c2, c1)
    x = np.ascontiguousarray(x, dtype=np.float64)
    return _qp_matrix_nb(c2, c1, x)


def quadratic_phase_sum_numba(c2, c1, x, w):
    c2, c1 = _as_rows(c2, c1)
    x = np.ascontiguousarray(x, dtype=np.float64)
    w = np.asarray(w, dtype=np.complex128)
    re, im = _qp_sum_nb(c2, c1, x, np.ascontiguousarray(w.real), np.ascontiguousarray(w.imag))
    return re + 1j * im


if HAVE_NUMBA:
    quadratic_phase_matrix = quadratic_phase_matrix_numba
    quadratic_phase_sum = quadratic_phase_sum_numba
else:
    quadratic_phase_matrix = quadratic_phase_matrix_numpy
    quadratic_phase_sum = quadratic_phase_sum_numpy

BACKEND = "numba" if HAVE_NUMBA else "numpy"
