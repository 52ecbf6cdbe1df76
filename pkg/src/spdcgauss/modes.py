"""Gaussian-mode geometry and the three-mode overlap.

The pump defines the z-axis; signal and idler propagate in the y-z plane
tilted by internal angles theta_s, theta_i (opposite senses).  Each mode
carries a transverse envelope exp(-(x^2+y^2)/W^2) in its own frame.
Integrating the product of the three envelopes (times exp(i dk.r)) over
the transverse plane leaves a 1-D integral along the crystal:

    Phi(dk) = pi/sqrt(A C) * exp(-dk_y^2/(4C)) * Phi_z
    Phi_z   = l * int_0^1 exp(-Xi^2 u^2) cos(dphi u) du

with the quadratic-form coefficients A, C, D, F, H assembled from the
waists and tilt angles, Xi = sqrt(H) l/2 the walk-off parameter and
dphi = K l/2 the accumulated longitudinal phase mismatch.  Collinear
geometry (Xi = 0) reproduces the familiar sinc; large Xi is the
overlap-limited regime where the crystal length drops out.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, replace

import numpy as np

from . import numerics
from .errors import NegativeH, ValidationError

__all__ = [
    "Role",
    "GaussianMode",
    "OverlapGeometry",
    "normalization_alpha",
    "confinement_correction",
    "geometry_coefficients",
    "phi_z",
    "phi_z_thin",
    "phi_z_thick",
    "longitudinal_k",
    "overlap_phi",
    "spectral_integral_S",
]

# magnitude below which a negative H = F - D^2/(4C) is treated as
# floating-point cancellation and clamped to zero (1/m^2)
H_CLAMP = 1e-18


class Role(str, enum.Enum):
    PUMP = "pump"
    SIGNAL = "signal"
    IDLER = "idler"


@dataclass(frozen=True)
class GaussianMode:
    """One paraxial beam: waist, vacuum wavelength, internal tilt,
    refractive index seen by the mode, and its role.

    ``theta`` is the tilt of the mode axis relative to the pump axis in
    crystal coordinates; the signal tilts one way, the idler the other
    (the sign convention is handled inside the geometry assembly, both
    angles are given as magnitudes here).  The pump defines the z-axis
    and must have theta = 0.
    """

    waist_w: float
    lambda_vac: float
    theta: float
    n: float
    role: Role

    def __post_init__(self):
        if not self.waist_w > 0:
            raise ValidationError(f"{self.role.value}.waist must be > 0")
        if not self.lambda_vac > 0:
            raise ValidationError(f"{self.role.value}.wavelength must be > 0")
        if not self.n >= 1.0:
            raise ValidationError(f"{self.role.value}.n must be >= 1")
        if self.role is Role.PUMP and self.theta != 0.0:
            raise ValidationError("pump tilt must be 0 (pump defines the z-axis)")

    @property
    def omega(self) -> float:
        from .constants import C_LIGHT
        return 2.0 * math.pi * C_LIGHT / self.lambda_vac


@dataclass(frozen=True)
class OverlapGeometry:
    """Quadratic-form coefficients of the three-mode overlap (1/m^2 for
    A, C, D, F, H; K in 1/m), plus the derived dimensionless walk-off
    parameter Xi = sqrt(H) l/2 and phase mismatch delta_phi = K l/2.

    K and delta_phi stay None until a wave-vector mismatch is supplied
    (see :func:`longitudinal_k` / :func:`overlap_phi`).
    """

    A: float
    C: float
    D: float
    F: float
    H: float
    Xi: float
    K: float | None = None
    delta_phi: float | None = None

    def __post_init__(self):
        if not (self.A >= self.C > 0):
            raise ValidationError("require A >= C > 0")
        if self.F < 0 or self.H < 0 or self.Xi < 0:
            raise ValidationError("F, H and Xi must be >= 0")


def normalization_alpha(waist_w: float) -> float:
    """Envelope normalization alpha = sqrt(2/(pi W^2)) such that
    alpha^2 * integral |U|^2 dx dy = 1."""
    if not waist_w > 0:
        raise ValidationError("waist must be > 0")
    return math.sqrt(2.0 / (math.pi * waist_w * waist_w))


def confinement_correction(waist_w: float, lambda_vac: float, n: float) -> float:
    """Relative frequency shift sqrt(1 + 2/(k W)^2) - 1 caused by the
    transverse confinement of the mode, with k = 2 pi n / lambda.

    Diagnostic only: for practical waists (~100 wavelengths) this is
    below 1e-5 and is neglected everywhere in the rate model.
    """
    if not (waist_w > 0 and lambda_vac > 0):
        raise ValidationError("waist and wavelength must be > 0")
    k = 2.0 * math.pi * n / lambda_vac
    return math.sqrt(1.0 + 2.0 / (k * k * waist_w * waist_w)) - 1.0


def geometry_coefficients(
    pump: GaussianMode,
    signal: GaussianMode,
    idler: GaussianMode,
    crystal_length_l: float,
) -> OverlapGeometry:
    """Assemble A, C, D, F, H and Xi from waists and internal tilts.

    A = sum 1/W^2
    C = 1/Wp^2 + cos^2(th_s)/Ws^2 + cos^2(th_i)/Wi^2
    D = sin(2 th_s)/Ws^2 - sin(2 th_i)/Wi^2
    F = sin^2(th_s)/Ws^2 + sin^2(th_i)/Wi^2
    H = F - D^2/(4C),  Xi = sqrt(H) l/2

    H >= 0 holds exactly (Cauchy-Schwarz); a tiny negative H from
    cancellation is clamped, anything below -H_CLAMP raises
    :class:`NegativeH`.
    """
    if pump.role is not Role.PUMP or signal.role is not Role.SIGNAL \
            or idler.role is not Role.IDLER:
        raise ValidationError("modes must be passed as (pump, signal, idler)")
    if not crystal_length_l > 0:
        raise ValidationError("crystal length must be > 0")
    wp2 = pump.waist_w ** 2
    ws2 = signal.waist_w ** 2
    wi2 = idler.waist_w ** 2
    ths, thi = signal.theta, idler.theta
    A = 1.0 / wp2 + 1.0 / ws2 + 1.0 / wi2
    C = 1.0 / wp2 + math.cos(ths) ** 2 / ws2 + math.cos(thi) ** 2 / wi2
    D = math.sin(2.0 * ths) / ws2 - math.sin(2.0 * thi) / wi2
    F = math.sin(ths) ** 2 / ws2 + math.sin(thi) ** 2 / wi2
    H = F - D * D / (4.0 * C)
    if H < 0.0:
        if H < -H_CLAMP:
            raise NegativeH(f"H = {H:.3e} 1/m^2; inconsistent geometry inputs")
        H = 0.0
    Xi = math.sqrt(H) * crystal_length_l / 2.0
    return OverlapGeometry(A=A, C=C, D=D, F=F, H=H, Xi=Xi)


def phi_z(xi: float, delta_phi, rel_tol: float = 1e-9, abs_tol: float = 1e-12,
          _chunk: int = 1536):
    """Dimensionless longitudinal overlap

        Phi_z / l = int_0^1 exp(-Xi^2 u^2) cos(delta_phi u) du

    evaluated by adaptive quadrature.  ``delta_phi`` may be a scalar or
    an ndarray (the integrals are computed in one vectorised pass).
    Equals sinc(delta_phi) at Xi = 0 and (sqrt(pi)/(2 Xi)) erf(Xi) at
    delta_phi = 0.
    """
    if xi < 0:
        raise ValidationError("Xi must be >= 0")
    arr = np.atleast_1d(np.asarray(delta_phi, dtype=float))
    if arr.size == 0:
        return np.empty(0)
    if arr.size > _chunk:
        # process in |delta_phi|-sorted chunks so the panel seeding of a
        # chunk matches its own oscillation scale
        order = np.argsort(np.abs(arr), kind="stable")
        out = np.empty_like(arr)
        for i in range(0, arr.size, _chunk):
            idx = order[i:i + _chunk]
            out[idx] = phi_z(xi, arr[idx], rel_tol, abs_tol, _chunk)
        return out
    amax = float(np.max(np.abs(arr)))
    n0 = max(1, int(np.ceil(amax / numerics.PHASE_PER_PANEL)), int(np.ceil(xi)))
    xi2 = xi * xi

    def integrand(u):
        return np.exp(-xi2 * (u * u))[None, :] * np.cos(arr[:, None] * u[None, :])

    res = numerics.integrate_finite(integrand, 0.0, 1.0, rel_tol, abs_tol,
                                    initial_intervals=n0)
    values = np.atleast_1d(res.value)
    if np.ndim(delta_phi) == 0:
        return float(values[0])
    return values


def phi_z_thin(delta_phi):
    """Thin-crystal (collinear) limit: Phi_z / l = sinc(delta_phi)."""
    return numerics.sinc(delta_phi)


def phi_z_thick(xi: float) -> float:
    """Walk-off-dominated value at zero phase mismatch,

        Phi_z / l = (sqrt(pi) / (2 Xi)) erf(Xi).

    This is the exact delta_phi = 0 value for any Xi > 0; it is the
    full story only in the large-Xi regime where the crystal length
    ceases to matter.
    """
    if not xi > 0:
        raise ValidationError("Xi must be > 0 (use phi_z for the Xi=0 limit)")
    return math.sqrt(math.pi) / (2.0 * xi) * numerics.erf(xi)


def longitudinal_k(geom: OverlapGeometry, delta_k_y: float, delta_k_z: float) -> float:
    """Effective longitudinal mismatch K entering Phi_z.

    K = delta_k_z - delta_k_y * D / (2C).  With perfect transverse phase
    matching (delta_k_y = 0), K reduces to delta_k_z.
    """
    return delta_k_z - delta_k_y * geom.D / (2.0 * geom.C)


def overlap_phi(
    geom: OverlapGeometry,
    delta_k_y: float,
    delta_k_z: float,
    crystal_length_l: float,
) -> float:
    """Full three-mode overlap integral (m^3),

        Phi = pi/sqrt(A C) * exp(-delta_k_y^2/(4C)) * l * Phi_z/l ,

    real-valued because the z-interval is symmetric.  delta_k_x = 0 by
    construction (all beams lie in the y-z plane).
    """
    if not crystal_length_l > 0:
        raise ValidationError("crystal length must be > 0")
    K = longitudinal_k(geom, delta_k_y, delta_k_z)
    dphi = K * crystal_length_l / 2.0
    transverse = math.pi / math.sqrt(geom.A * geom.C) \
        * math.exp(-delta_k_y ** 2 / (4.0 * geom.C))
    return transverse * crystal_length_l * phi_z(geom.Xi, dphi)


def updated_with_mismatch(geom: OverlapGeometry, delta_k_y: float,
                          delta_k_z: float, crystal_length_l: float) -> OverlapGeometry:
    """Copy of ``geom`` with K and delta_phi filled in for reporting."""
    K = longitudinal_k(geom, delta_k_y, delta_k_z)
    return replace(geom, K=K, delta_phi=K * crystal_length_l / 2.0)


def spectral_integral_S(xi: float, rel_tol: float = 1e-7) -> float:
    """Spectral integral S(Xi) = int |Phi_z/l|^2 d(delta_phi) over the
    whole real line, computed by quadrature of the overlap itself.

    S(0) = pi (thin-crystal anchor) and S decreases monotonically with
    Xi.  The truncation half-width is seeded at a multiple of pi so the
    sin^2-type tail oscillation cancels out of the tail fit.
    """
    if xi < 0:
        raise ValidationError("Xi must be >= 0")

    def integrand(dphi):
        vals = phi_z(xi, np.atleast_1d(dphi), rel_tol=1e-9, abs_tol=3e-10)
        return vals * vals

    res = numerics.integrate_symmetric_infinite(
        integrand,
        rel_tol=rel_tol,
        half_width_hint=64.0 * math.pi,
        abs_tol=2e-7,
        phase_rate=2.0,  # |Phi_z|^2 oscillates with period pi in delta_phi
    )
    return float(res.value)
