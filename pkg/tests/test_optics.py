import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from biphoton.errors import DomainError, GeometryError
from biphoton.optics import (LensSystem, PumpSpec, SpectralFilter, aperture_for_ratio, chirp_integral,
                             lens_half_angle, mu_parameters, scaled_coords, transfer_focal,
                             transfer_imaging_aperture, transfer_imaging_aperture_quad,
                             transfer_imaging_ideal, unscale)
from biphoton.quadrature import QuadratureSpec, integrate_1d

LENS = LensSystem(0.1, 0.025)


def test_characteristic_lengths():
    sc = scaled_coords(0.0, 0.0, 532e-9, LENS)
    assert sc.z_c == pytest.approx(17.024e-6)
    assert sc.x_c == pytest.approx(4.256e-6)
    assert LENS.f_number == 4


@settings(max_examples=40, deadline=None)
@given(st.floats(-1e-4, 1e-4), st.floats(-5e-3, 5e-3))
def test_scale_roundtrip(x, z):
    x2, z2 = unscale(scaled_coords(x, z, 532e-9, LENS), LENS)
    assert float(x2) == pytest.approx(x, abs=1e-18)
    assert float(z2) == pytest.approx(z, abs=1e-18)


def test_geometry_errors():
    with pytest.raises(GeometryError):
        scaled_coords(0, -0.2, 532e-9, LENS)
    with pytest.raises(GeometryError):
        LensSystem(-1)
    with pytest.raises(GeometryError):
        LensSystem(0.1).f_number
    with pytest.raises(GeometryError):
        lens_half_angle(LensSystem(0.1))


def test_half_angle_and_ratio():
    lens = LensSystem(0.1, 0.02)
    assert lens_half_angle(lens) == pytest.approx(0.05)
    ap = aperture_for_ratio(2.0, 0.01, 0.1)
    assert 0.01 / lens_half_angle(LensSystem(0.1, ap)) == pytest.approx(2.0)
    with pytest.raises(DomainError):
        aperture_for_ratio(0, 0.01, 0.1)


def test_mu_parameters():
    mu1, mu2, nf = mu_parameters(LENS, 1.2e-3, 1064e-9)
    assert nf == pytest.approx(0.025 ** 2 / (1064e-9 * 0.1))
    assert mu2 == pytest.approx(mu1 / 2)


@settings(max_examples=40, deadline=None)
@given(st.floats(-200, 200).filter(lambda v: abs(v) > 1e-3), st.floats(-100, 100))
def test_chirp_integral_against_quadrature(c2, c1):
    ref = integrate_1d(lambda t: np.exp(-1j * (c2 * t * t + c1 * t)), -0.7, 0.4,
                       QuadratureSpec(rtol=1e-11, initial_panels=16)).value
    assert complex(chirp_integral(c2, c1, -0.7, 0.4)) == pytest.approx(ref, abs=1e-9)


def test_chirp_integral_rejects_zero():
    with pytest.raises(ValueError):
        chirp_integral(0.0, 1.0, 0, 1)


def test_aperture_closed_form_matches_quadrature():
    lens = LensSystem(0.1, 2e-3)
    lam = 1064e-9
    q = np.linspace(-4e4, 4e4, 7)
    for z in (-5e-4, 0.0, 8e-4):
        a = transfer_imaging_aperture(0.0, z, q, lam, lens)
        b = transfer_imaging_aperture_quad(0.0, z, q, lam, lens)
        np.testing.assert_allclose(a, b, rtol=1e-6, atol=1e-9 * np.max(np.abs(b)))


def test_aperture_tends_to_ideal_for_large_pupil():
    lam = 1064e-9
    z = np.array([-1e-3, -3e-4, 2e-4])
    q = 2e4
    big = LensSystem(0.1, 0.3)
    ideal = LensSystem(0.1)
    ratio = (transfer_imaging_aperture(0.0, z, q, lam, big)
             / transfer_imaging_ideal(0.0, z, q, lam, ideal))
    U = 1 + z / 0.1
    np.testing.assert_allclose(np.abs(ratio) * np.sqrt(U), np.abs(ratio[0]) * np.sqrt(U[0]), rtol=2e-2)
    # relative phase between z values must vanish (only a constant phase is allowed)
    ph = np.angle(ratio / ratio[0])
    np.testing.assert_allclose(ph, 0, atol=5e-2)


def test_ideal_transfer_is_pure_phase():
    t = transfer_imaging_ideal(1e-6, 2e-4, np.linspace(-1e5, 1e5, 11), 1064e-9, LensSystem(0.1))
    np.testing.assert_allclose(np.abs(t), 1.0)


def test_focal_transfer_at_focus_is_pupil_transform():
    lam = 532e-9
    q = 0.0
    x = np.array([0.0, 2e-6])
    t = transfer_focal(x, 0.0, q, lam, LENS)
    # |T|^2 at z=0 reduces to a sinc^2 of the lateral coordinate
    D, f = LENS.aperture, LENS.focal_length
    expect = (D * np.sinc(D * x / (lam * f))) ** 2 / (lam * f)
    np.testing.assert_allclose(np.abs(t) ** 2, expect, rtol=1e-8)


def test_pump_spectrum_normalisation():
    p = PumpSpec(532e-9, 50e-6)
    q = np.linspace(-1e6, 1e6, 20001)
    # Parseval: int |E|^2 dx = (1/2pi) int |spectrum|^2 dq
    lhs = 50e-6 * math.sqrt(math.pi / 2)
    rhs = np.trapezoid(np.abs(p.angular_spectrum(q)) ** 2, q) / (2 * math.pi)
    assert rhs == pytest.approx(lhs, rel=1e-6)
    with pytest.raises(DomainError):
        PumpSpec().angular_spectrum(0.0)


def test_filter_wavelength_width():
    lam_o = 1064e-9
    assert SpectralFilter(0.2).wavelength_width(lam_o, first_order=True) == pytest.approx(212.8e-9)
    assert SpectralFilter(0.2).wavelength_width(lam_o) == pytest.approx(lam_o * 0.2 / 0.99)
    with pytest.raises(DomainError):
        SpectralFilter(2.5)
    with pytest.raises(ValueError):
        SpectralFilter(0.1, "peak")
