import math

import numpy as np
import pytest
import scipy.special

from bruteforce import OVERLAP_INSTANCES, overlap_brute_force
from spdcgauss.errors import ValidationError
from spdcgauss.modes import (
    GaussianMode,
    OverlapGeometry,
    Role,
    confinement_correction,
    geometry_coefficients,
    longitudinal_k,
    normalization_alpha,
    overlap_phi,
    phi_z,
    phi_z_thick,
    phi_z_thin,
    spectral_integral_S,
)
from spdcgauss.numerics import sinc


def S_parseval(xi: float) -> float:
    """Closed form of the Plancherel identity for the spectral integral,
    evaluated with scipy's erf (independent of the quadrature route)."""
    if xi == 0.0:
        return math.pi
    a = math.sqrt(2.0) * xi
    return math.pi * math.sqrt(math.pi) / (2.0 * a) * float(scipy.special.erf(a))


def mode(role, waist=82e-6, lam=702.2e-9, theta=0.0, n=1.65):
    if role is Role.PUMP:
        lam, theta = 351.1e-9, 0.0
    return GaussianMode(waist, lam, theta, n, role)


def geometry(waists=(82e-6, 82e-6, 82e-6), thetas=(0.0, 0.0), l=2e-3):
    p = mode(Role.PUMP, waist=waists[0])
    s = mode(Role.SIGNAL, waist=waists[1], theta=thetas[0])
    i = mode(Role.IDLER, waist=waists[2], theta=thetas[1])
    return geometry_coefficients(p, s, i, l)


def test_alpha_unit_point():
    assert normalization_alpha(math.sqrt(2.0 / math.pi)) == pytest.approx(1.0, rel=1e-15)


def test_alpha_value_and_scaling():
    a = normalization_alpha(82e-6)
    assert a == pytest.approx(9730.299521986164, rel=1e-12)
    assert normalization_alpha(2 * 82e-6) == pytest.approx(a / 2, rel=1e-15)


def test_alpha_normalizes_envelope():
    w = 82e-6
    a = normalization_alpha(w)
    x = np.linspace(-6 * w, 6 * w, 1501)
    xx, yy = np.meshgrid(x, x, indexing="ij")
    u_sq = np.exp(-2.0 * (xx * xx + yy * yy) / (w * w))
    integral = np.trapezoid(np.trapezoid(u_sq, x, axis=1), x)
    assert a * a * integral == pytest.approx(1.0, abs=1e-6)


def test_confinement_correction():
    assert confinement_correction(1.0, 702.2e-9, 1.0) < 1e-13  # plane-wave limit
    lam, n = 702.2e-9, 1.665
    w = 100 * lam / n
    assert confinement_correction(w, lam, n) == pytest.approx(
        2.5330263828671207e-6, rel=1e-9)
    assert confinement_correction(82e-6, lam, n) < 1e-6


def test_geometry_collinear_degeneracy():
    g = geometry(thetas=(0.0, 0.0))
    assert g.D == 0.0 and g.F == 0.0 and g.H == 0.0 and g.Xi == 0.0
    assert g.A == g.C


def test_geometry_symmetric_equal_waists():
    w, th, l = 82e-6, math.radians(3.1), 2e-3
    g = geometry(waists=(w, w, w), thetas=(th, th), l=l)
    assert g.D == 0.0
    assert g.H == pytest.approx(g.F, rel=1e-15)
    assert g.H == pytest.approx(2 * math.sin(th) ** 2 / w ** 2, rel=1e-12)
    assert g.Xi == pytest.approx(math.sqrt(2) * math.sin(th) * l / (2 * w), rel=1e-12)


def test_geometry_bbo_walkoff():
    g = geometry(thetas=(math.radians(3.1), math.radians(3.1)))
    assert g.Xi == pytest.approx(0.9326706190257006, rel=1e-12)
    assert g.Xi == pytest.approx(0.933, rel=5e-3)


def test_geometry_h_nonnegative_random():
    rng = np.random.default_rng(42)
    n = 100_000
    wp, ws, wi = [rng.uniform(5e-6, 200e-6, n) for _ in range(3)]
    ths, thi = [rng.uniform(0.0, 0.2, n) for _ in range(2)]
    C = 1 / wp**2 + np.cos(ths) ** 2 / ws**2 + np.cos(thi) ** 2 / wi**2
    D = np.sin(2 * ths) / ws**2 - np.sin(2 * thi) / wi**2
    F = np.sin(ths) ** 2 / ws**2 + np.sin(thi) ** 2 / wi**2
    H = F - D * D / (4 * C)
    assert np.all(H >= 0.0)
    # spot-check the dataclass path on a sample
    for k in range(0, n, 10_000):
        g = geometry(waists=(wp[k], ws[k], wi[k]), thetas=(ths[k], thi[k]))
        assert g.H >= 0.0


def test_geometry_requires_roles():
    p, s, i = mode(Role.PUMP), mode(Role.SIGNAL), mode(Role.IDLER)
    with pytest.raises(ValidationError):
        geometry_coefficients(s, p, i, 1e-3)


def test_mode_invariants():
    with pytest.raises(ValidationError):
        GaussianMode(-1e-6, 702e-9, 0.0, 1.6, Role.SIGNAL)
    with pytest.raises(ValidationError):
        GaussianMode(82e-6, 702e-9, 0.1, 1.6, Role.PUMP)  # pump must be axial


def test_overlap_geometry_invariants():
    with pytest.raises(ValidationError):
        OverlapGeometry(A=1.0, C=2.0, D=0.0, F=0.0, H=0.0, Xi=0.0)  # A < C


def test_phi_z_anchor_points():
    assert phi_z(0.0, 0.0) == pytest.approx(1.0, abs=1e-12)
    assert phi_z(0.0, math.pi) == pytest.approx(0.0, abs=1e-12)
    assert phi_z(1.0, 0.0) == pytest.approx(0.7468241328124269, rel=1e-10)


def test_phi_z_reduces_to_sinc():
    grid = np.linspace(-20.0, 20.0, 1000)
    vals = phi_z(0.0, grid)
    assert np.max(np.abs(vals - sinc(grid))) < 1e-9


def test_phi_z_erf_identity():
    for xi in np.linspace(0.1, 10.0, 100):
        xi = float(xi)
        assert phi_z(xi, 0.0) == pytest.approx(phi_z_thick(xi), abs=1e-10)


def test_phi_z_even_and_bounded():
    grid = np.linspace(0.0, 30.0, 400)
    for xi in (0.0, 0.7, 2.5):
        plus = phi_z(xi, grid)
        minus = phi_z(xi, -grid)
        np.testing.assert_allclose(plus, minus, atol=1e-12)
        assert np.all(np.abs(plus) <= 1.0)
        assert np.all(plus >= -0.5)


def test_phi_z_thin():
    assert phi_z_thin(0.0) == 1.0
    assert phi_z_thin(math.pi) == pytest.approx(0.0, abs=1e-15)
    # half-power point of the sinc^2 spectrum
    assert phi_z_thin(1.39155737825151) == pytest.approx(0.7071067811865476,
                                                         rel=1e-10)


def test_phi_z_thick():
    assert phi_z_thick(1.0) == pytest.approx(0.7468241328124269, rel=1e-10)
    assert phi_z_thick(50.0) == pytest.approx(math.sqrt(math.pi) / 100.0, rel=1e-10)
    assert phi_z_thick(1e-8) == pytest.approx(1.0, rel=1e-10)
    for xi in (3.0, 5.0, 8.0):
        assert phi_z_thick(xi) == pytest.approx(phi_z(xi, 0.0), rel=1e-6)
    with pytest.raises(ValidationError):
        phi_z_thick(0.0)


def test_overlap_phi_collinear_equal_waists():
    w, l = 82e-6, 2e-3
    g = geometry(waists=(w, w, w), thetas=(0.0, 0.0), l=l)
    phi = overlap_phi(g, 0.0, 0.0, l)
    assert phi == pytest.approx(math.pi * w * w * l / 3.0, rel=1e-9)


def test_overlap_phi_transverse_factorization():
    w, l = 50e-6, 1e-3
    g = geometry(waists=(w, w, w), thetas=(math.radians(2.0), math.radians(2.0)), l=l)
    base = overlap_phi(g, 0.0, 500.0, l)
    dky = 4000.0
    # equal waists and angles: D = 0, so dky only enters the Gaussian factor
    shifted = overlap_phi(g, dky, 500.0, l)
    assert shifted / base == pytest.approx(math.exp(-dky**2 / (4 * g.C)), rel=1e-9)


def test_longitudinal_k_collinear_is_dkz():
    g = geometry(thetas=(0.0, 0.0))
    assert longitudinal_k(g, 1234.0, 777.0) == 777.0  # D = 0 collinear
    g2 = geometry(waists=(30e-6, 20e-6, 40e-6), thetas=(0.03, 0.01))
    assert longitudinal_k(g2, 0.0, 777.0) == 777.0


def test_overlap_phi_brute_force_single():
    c = OVERLAP_INSTANCES[0]
    p = GaussianMode(c["Wp"], 351.1e-9, 0.0, 1.65, Role.PUMP)
    s = GaussianMode(c["Ws"], 702.2e-9, c["th_s"], 1.65, Role.SIGNAL)
    i = GaussianMode(c["Wi"], 702.2e-9, c["th_i"], 1.65, Role.IDLER)
    g = geometry_coefficients(p, s, i, c["l"])
    closed = overlap_phi(g, c["dky"], c["dkz"], c["l"])
    brute = overlap_brute_force(**c)
    assert closed == pytest.approx(brute, rel=1e-3)


def test_spectral_integral_anchors():
    assert spectral_integral_S(0.0) == pytest.approx(math.pi, abs=1e-6)
    assert spectral_integral_S(0.933) == pytest.approx(1.9791643406568558, abs=1e-6)
    # large-walk-off asymptote pi^{3/2} / (2 sqrt(2) Xi)
    assert spectral_integral_S(5.0) == pytest.approx(0.3937402486430604, abs=1e-6)


def test_spectral_integral_parseval_grid():
    for xi in np.linspace(0.0, 5.0, 11):
        xi = float(xi)
        assert spectral_integral_S(xi) == pytest.approx(S_parseval(xi), abs=1e-6)


def test_spectral_integral_monotone_decreasing():
    xis = np.linspace(0.0, 5.0, 50)
    vals = [spectral_integral_S(float(x)) for x in xis]
    assert all(a > b for a, b in zip(vals, vals[1:]))
