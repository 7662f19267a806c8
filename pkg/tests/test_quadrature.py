import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy.special import fresnel

from biphoton.errors import NonConvergenceError
from biphoton.quadrature import QuadratureSpec, composite_nodes, integrate_1d, integrate_2d

TIGHT = QuadratureSpec(rtol=1e-11)


def test_oscillatory_exponential():
    w = 250.0
    got = integrate_1d(lambda t: np.exp(1j * w * t), 0, 1, TIGHT).value
    assert got == pytest.approx((np.exp(1j * w) - 1) / (1j * w), rel=1e-9)


def test_fresnel_chirp():
    s, c = fresnel(5.0)
    got = integrate_1d(lambda t: np.exp(0.5j * np.pi * t * t), 0, 5, TIGHT).value
    assert got == pytest.approx(c + 1j * s, rel=1e-9)


def test_vector_integrand_leading_axes():
    ks = np.arange(1, 6, dtype=float)
    res = integrate_1d(lambda t: np.cos(ks[:, None] * t[None, :]), 0, 1, TIGHT)
    np.testing.assert_allclose(res.value, np.sin(ks) / ks, rtol=1e-10)
    assert res.panels >= 1 and res.evaluations > 0


def test_error_estimate_is_bounded():
    res = integrate_1d(lambda t: np.exp(40j * t * t), -1, 1, QuadratureSpec(rtol=1e-8))
    assert res.error <= 1e-8 * abs(res.value) * 10


@settings(max_examples=30, deadline=None)
@given(st.floats(-3, 3), st.floats(-3, 3), st.floats(-40, 40))
def test_linearity(a, b, w):
    f = lambda t: np.exp(1j * w * t)
    g = lambda t: t * t
    lhs = integrate_1d(lambda t: a * f(t) + b * g(t), -1, 1, TIGHT).value
    rhs = a * integrate_1d(f, -1, 1, TIGHT).value + b * integrate_1d(g, -1, 1, TIGHT).value
    assert abs(lhs - rhs) <= 1e-9 * (abs(a) + abs(b) + 1)


@settings(max_examples=30, deadline=None)
@given(st.floats(-60, 60), st.floats(-20, 20))
def test_conjugation(w, c):
    f = lambda t: np.exp(1j * (w * t + c * t * t))
    fc = lambda t: np.conj(f(t))
    assert integrate_1d(fc, 0, 2, TIGHT).value == pytest.approx(np.conj(integrate_1d(f, 0, 2, TIGHT).value),
                                                                 abs=1e-10)


@settings(max_examples=30, deadline=None)
@given(st.floats(0.1, 5), st.floats(0.1, 5), st.floats(0.1, 5))
def test_interval_additivity(a, b, c):
    f = lambda t: np.exp(2j * t) / (1 + t)
    whole = integrate_1d(f, 0, a + b + c, TIGHT).value
    parts = integrate_1d(f, 0, a, TIGHT).value + integrate_1d(f, a, a + b + c, TIGHT).value
    assert whole == pytest.approx(parts, abs=1e-10)


def test_2d_separable():
    f = lambda x, y: np.exp(1j * 3 * x)[:, None] * np.cos(2 * y)[None, :]
    got = integrate_2d(f, (0, 1), (0, 1), QuadratureSpec(rtol=1e-10)).value
    expect = (np.exp(3j) - 1) / 3j * np.sin(2) / 2
    assert got == pytest.approx(expect, rel=1e-8)


def test_composite_nodes_integrate_polynomials():
    x, w = composite_nodes(-2, 3, 7, order=8)
    assert np.sum(w) == pytest.approx(5)
    assert np.sum(w * x ** 5) == pytest.approx((3 ** 6 - 2 ** 6) / 6)


def test_zero_integral_converges():
    res = integrate_1d(lambda t: np.sin(2 * np.pi * t)[None, :] * np.array([[1.0], [3.0]]), 0, 1,
                       QuadratureSpec(rtol=1e-12))
    np.testing.assert_allclose(res.value, 0, atol=1e-14)
    assert res.panels < 64


def test_runaway_refinement_is_stopped():
    rng = np.random.default_rng(0)
    with pytest.raises(NonConvergenceError):
        integrate_1d(lambda t: rng.normal(size=(2000, t.size)), 0, 1,
                     QuadratureSpec(rtol=1e-14, max_depth=60, order=8))


def test_nonconvergence_reported():
    with pytest.raises(NonConvergenceError) as info:
        integrate_1d(lambda t: np.sign(t - 1 / 3), 0, 1, QuadratureSpec(rtol=1e-14, max_depth=3, order=4))
    assert info.value.exit_code == 3


@pytest.mark.parametrize("kw", [{"rtol": 0}, {"max_depth": 0}, {"order": 1}, {"initial_panels": 0}])
def test_spec_validation(kw):
    with pytest.raises(ValueError):
        QuadratureSpec(**kw)


def test_bad_interval():
    with pytest.raises(ValueError):
        integrate_1d(lambda t: t, 1, 0)


def test_deterministic():
    f = lambda t: np.exp(77j * t * t)
    a = integrate_1d(f, -1, 1, QuadratureSpec(rtol=1e-9)).value
    b = integrate_1d(f, -1, 1, QuadratureSpec(rtol=1e-9)).value
    assert a == b
