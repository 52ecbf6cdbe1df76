"""Absolute emission rates: pump amplitude from power, spectral density,
total pair rate for matched non-collinear geometry, thin-crystal closed
forms, waist-ratio behaviour and efficiency figures.

Everything is evaluated at fixed nominal refractive indices (taken at
the pump and degenerate daughter wavelengths) -- the indices sit outside
the spectral integral in this model.  Transverse phase matching is taken
as perfect (delta_k_y = 0) throughout the rate expressions.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field, replace

import numpy as np

from . import materials, modes
from .constants import C_LIGHT, EPSILON_0, HBAR
from .errors import UnequalWaists, ValidationError
from .materials import CrystalSpec, delta_k_z, dispersion_factor, effective_nonlinearity_bbo
from .modes import GaussianMode, geometry_coefficients, phi_z, spectral_integral_S

__all__ = [
    "AngleConvention",
    "PolarizationAssignment",
    "SourceConfig",
    "RateReport",
    "ComparisonRow",
    "pump_amplitude_sq",
    "spectral_rate_density",
    "total_rate",
    "thin_crystal_rates",
    "waist_scaling",
    "optimal_gamma",
    "gamma_sweep",
    "experiment_comparison",
]


class AngleConvention(str, enum.Enum):
    """How the external collection angle maps to the in-crystal tilt.

    ``INTERNAL_PHYSICS`` applies Snell refraction at the exit face
    (physically correct).  ``PAPER_EXTERNAL_AS_INTERNAL`` inserts the
    external angle directly into the crystal-frame geometry; this is the
    convention under which the published BBO walk-off figure of 0.933
    is reproduced.
    """

    INTERNAL_PHYSICS = "internal_physics"
    PAPER_EXTERNAL_AS_INTERNAL = "paper_external_as_internal"


class PolarizationAssignment(str, enum.Enum):
    SIGNAL_ORDINARY = "signal_ordinary"
    SIGNAL_EXTRAORDINARY = "signal_extraordinary"


@dataclass(frozen=True)
class SourceConfig:
    """Full description of one photon-pair source.

    The three ``GaussianMode`` entries arrive fully resolved: internal
    tilt angles per the chosen angle convention and refractive indices
    already assigned (pump extraordinary at the cut angle; daughters
    ordinary / extraordinary per ``polarization_assignment``).
    Degenerate operation is the supported design point: both daughter
    wavelengths must equal twice the pump wavelength.
    """

    pump_power_p: float
    pump: GaussianMode
    signal: GaussianMode
    idler: GaussianMode
    crystal: CrystalSpec
    external_collection_angle: float
    angle_convention: AngleConvention
    polarization_assignment: PolarizationAssignment
    collection_solid_angle_sr: float | None = None
    pair_to_singles_ratio: float | None = None
    decay_path_multiplicity: int = 2
    reference_values: dict = field(default_factory=dict)

    def __post_init__(self):
        if not self.pump_power_p > 0:
            raise ValidationError("pump_power must be > 0")
        lam_d = 2.0 * self.pump.lambda_vac
        for m in (self.signal, self.idler):
            if abs(m.lambda_vac - lam_d) > 1e-9 * lam_d:
                raise ValidationError(
                    f"{m.role.value}.wavelength: degenerate operation requires "
                    f"2 x pump wavelength ({lam_d * 1e9:.2f} nm)"
                )

    @property
    def d_eff(self) -> float:
        return effective_nonlinearity_bbo(self.crystal)


@dataclass(frozen=True)
class RateReport:
    """Computed quantities with units.

    R_T and R_T_thin are pairs/s into the two collection modes;
    spectral_samples pairs (omega_s [rad/s], dR/domega_s [pairs s/rad /s]);
    efficiency_per_mm is pairs per pump photon per mm of crystal,
    R_T * hbar*omega_p / (P * l_mm).
    """

    Xi: float
    S: float
    R_T: float
    R_T_thin: float | None
    spectral_samples: list
    efficiency_per_mm: float
    efficiency_per_mm_sr: float | None
    warnings: list

    def __post_init__(self):
        if self.R_T < 0 or (self.R_T_thin is not None and self.R_T_thin < 0):
            raise ValidationError("rates must be >= 0")
        if not (0.0 < self.S <= math.pi + 1e-6):  # float headroom at the S=pi anchor
            raise ValidationError(f"S = {self.S} outside (0, pi]")


def pump_amplitude_sq(power_p: float, waist_wp: float, n_p: float) -> float:
    """Squared pump field amplitude |E_p0|^2 = (2/(pi Wp^2)) * 2P/(eps0 n_p c),
    in V^2/m^2, for a monochromatic Gaussian pump carrying power P."""
    if not (power_p > 0 and waist_wp > 0 and n_p >= 1):
        raise ValidationError("require P > 0, Wp > 0, n_p >= 1")
    alpha_sq = 2.0 / (math.pi * waist_wp * waist_wp)
    return alpha_sq * 2.0 * power_p / (EPSILON_0 * n_p * C_LIGHT)


def _density_prefactor(config: SourceConfig) -> float:
    """[d alpha_s alpha_i E_p0 / c]^2 / (2 pi n_s n_i), without the
    omega_s*omega_i and Phi^2 factors."""
    alpha_s = modes.normalization_alpha(config.signal.waist_w)
    alpha_i = modes.normalization_alpha(config.idler.waist_w)
    ep_sq = pump_amplitude_sq(config.pump_power_p, config.pump.waist_w, config.pump.n)
    d = config.d_eff
    return (d * d * alpha_s ** 2 * alpha_i ** 2 * ep_sq / C_LIGHT ** 2
            / (2.0 * math.pi * config.signal.n * config.idler.n))


def _spectral_density_grid(config: SourceConfig, omega_s) -> np.ndarray:
    """Vectorised dR/domega_s over an array of signal frequencies."""
    omega_s = np.asarray(omega_s, dtype=float)
    omega_p = config.pump.omega
    if np.any(omega_s <= 0) or np.any(omega_s >= omega_p):
        raise ValidationError("omega_s must lie strictly inside (0, omega_p)")
    omega_i = omega_p - omega_s
    geom = geometry_coefficients(config.pump, config.signal, config.idler,
                                 config.crystal.length_l)
    l = config.crystal.length_l
    ths, thi = config.signal.theta, config.idler.theta
    dkz = (config.signal.n * omega_s * math.cos(ths)
           + config.idler.n * omega_i * math.cos(thi)
           - config.pump.n * omega_p) / C_LIGHT
    dphi = dkz * l / 2.0  # K = delta_k_z under perfect transverse matching
    transverse = math.pi / math.sqrt(geom.A * geom.C)
    phi = transverse * l * phi_z(geom.Xi, dphi)
    return _density_prefactor(config) * omega_s * omega_i * phi * phi


def spectral_rate_density(config: SourceConfig, omega_s: float) -> float:
    """Pair rate per unit signal angular frequency at ``omega_s`` (rad/s),

        dR/domega_s = [d a_s a_i E_p0 Phi / c]^2 * omega_s omega_i / (2 pi n_s n_i)

    with Phi evaluated at delta_k_y = 0 (perfect transverse phase
    matching) and the exact omega_s * omega_i product.
    """
    return float(_spectral_density_grid(config, np.array([omega_s]))[0])


def _default_sample_grid(config: SourceConfig, span_dphi: float = 100.0,
                         points: int = 2001) -> np.ndarray:
    """omega_s grid covering delta_phi in [-span, span] about the
    phase-matched point (the spectral weight |Phi_z|^2 lives there)."""
    omega_p = config.pump.omega
    l = config.crystal.length_l
    ths, thi = config.signal.theta, config.idler.theta
    slope = (config.signal.n * math.cos(ths)
             - config.idler.n * math.cos(thi)) / C_LIGHT * l / 2.0
    dphi_deg = delta_k_z(config.signal.n, config.idler.n, config.pump.n,
                         omega_p / 2, omega_p / 2, omega_p, ths, thi) * l / 2.0
    center = omega_p / 2.0 - dphi_deg / slope
    half = span_dphi / abs(slope)
    lo = max(center - half, 1e-6 * omega_p)
    hi = min(center + half, (1 - 1e-6) * omega_p)
    return np.linspace(lo, hi, points)


def total_rate(config: SourceConfig, spectral_points: int = 2001) -> RateReport:
    """Total pair rate for the matched non-collinear geometry,

        R_T = 4 d^2 P l w_p^2 S(Xi)
              / (3 pi n_p n_s n_i eps0 c^2 (pi Wp^2)
                 (1 + cos^2 th_i + cos^2 th_s) |n_i cos th_i - n_s cos th_s|)

    valid for equal waists, matched target angles and degenerate
    operation (omega_s omega_i is approximated by omega_p^2/4, as in the
    derivation of the closed form).
    """
    warnings: list[str] = []
    wp, ws, wi = config.pump.waist_w, config.signal.waist_w, config.idler.waist_w
    if not (math.isclose(wp, ws, rel_tol=1e-12) and math.isclose(wp, wi, rel_tol=1e-12)):
        raise UnequalWaists(
            "closed-form total rate requires Wp = Ws = Wi; "
            "use waist_scaling for the general waist dependence"
        )
    ths, thi = config.signal.theta, config.idler.theta
    if abs(ths - thi) > 1e-9:
        warnings.append(
            f"target angles differ (theta_s={math.degrees(ths):.4f} deg, "
            f"theta_i={math.degrees(thi):.4f} deg); the closed form assumes "
            "matched collection angles"
        )
    if config.angle_convention is AngleConvention.PAPER_EXTERNAL_AS_INTERNAL:
        warnings.append(
            "angle convention 'paper_external_as_internal': external angle "
            "inserted directly into the crystal-frame geometry (no Snell "
            "refraction applied)"
        )

    geom = geometry_coefficients(config.pump, config.signal, config.idler,
                                 config.crystal.length_l)
    S = spectral_integral_S(geom.Xi)
    disp = dispersion_factor(config.signal.n, config.idler.n, ths, thi)
    if disp < 0:
        warnings.append(
            "(n_i cos th_i - n_s cos th_s) is negative; the rate uses its "
            "magnitude (sign only reflects the signal/idler labels)"
        )
    dn = abs(disp) * C_LIGHT

    omega_p = config.pump.omega
    d = config.d_eff
    P = config.pump_power_p
    l = config.crystal.length_l
    n_p, n_s, n_i = config.pump.n, config.signal.n, config.idler.n
    angular = 1.0 + math.cos(thi) ** 2 + math.cos(ths) ** 2
    r_t = (4.0 * d * d * P * l * omega_p ** 2 * S
           / (3.0 * math.pi * n_p * n_s * n_i * EPSILON_0 * C_LIGHT ** 2
              * (math.pi * wp * wp) * angular * dn))

    r_thin = None
    if ths == 0.0 and thi == 0.0:
        _, r_thin = thin_crystal_rates(config)

    grid = _default_sample_grid(config, points=spectral_points)
    density = _spectral_density_grid(config, grid)
    samples = list(zip(grid.tolist(), density.tolist()))

    length_mm = l * 1e3
    eff_mm = r_t * HBAR * omega_p / (P * length_mm)
    eff_mm_sr = None
    if config.collection_solid_angle_sr:
        eff_mm_sr = eff_mm / config.collection_solid_angle_sr

    return RateReport(Xi=geom.Xi, S=S, R_T=r_t, R_T_thin=r_thin,
                      spectral_samples=samples, efficiency_per_mm=eff_mm,
                      efficiency_per_mm_sr=eff_mm_sr, warnings=warnings)


def thin_crystal_rates(config: SourceConfig):
    """Collinear thin-crystal closed forms.

    Returns ``(density, rate)`` where ``density(omega_s)`` is

        dR/domega_s = 2 d^2 w_p^2 P l^2 sinc^2(delta_k_z l/2)
                      / (9 pi n_p n_s n_i eps0 c^3 (pi Wp^2))

    and ``rate`` the total

        R_T = 4 d^2 P l w_p^2 / (9 n_s n_i n_p eps0 (pi Wp^2) |n_i - n_s| c^2).

    Requires collinear type-II operation (theta = 0, n_i != n_s) and
    equal waists.
    """
    wp, ws, wi = config.pump.waist_w, config.signal.waist_w, config.idler.waist_w
    if not (math.isclose(wp, ws, rel_tol=1e-12) and math.isclose(wp, wi, rel_tol=1e-12)):
        raise UnequalWaists("thin-crystal closed forms require Wp = Ws = Wi")
    if config.signal.theta != 0.0 or config.idler.theta != 0.0:
        raise ValidationError("thin_crystal_rates requires collinear geometry (theta = 0)")
    n_p, n_s, n_i = config.pump.n, config.signal.n, config.idler.n
    disp = dispersion_factor(n_s, n_i, 0.0, 0.0)  # DegenerateDispersion if n_i ~ n_s
    dn = abs(disp) * C_LIGHT

    omega_p = config.pump.omega
    d = config.d_eff
    P = config.pump_power_p
    l = config.crystal.length_l
    area = math.pi * wp * wp

    rate = (4.0 * d * d * P * l * omega_p ** 2
            / (9.0 * n_s * n_i * n_p * EPSILON_0 * area * dn * C_LIGHT ** 2))

    pref = (2.0 * d * d * omega_p ** 2 * P * l * l
            / (9.0 * math.pi * n_p * n_s * n_i * EPSILON_0 * C_LIGHT ** 3 * area))

    def density(omega_s: float) -> float:
        omega_i = omega_p - omega_s
        dkz = delta_k_z(n_s, n_i, n_p, omega_s, omega_i, omega_p, 0.0, 0.0)
        s = modes.phi_z_thin(dkz * l / 2.0)
        return pref * s * s

    return density, rate


def waist_scaling(waist_wp: float, waist_ws: float, waist_wi: float) -> float:
    """Thin-crystal waist dependence of the total rate (relative units),

        1 / (Wp^2 Ws^2 Wi^2 (1/Wp^2 + 1/Ws^2 + 1/Wi^2)^2),

    symmetric under any permutation of the three waists.
    """
    if min(waist_wp, waist_ws, waist_wi) <= 0:
        raise ValidationError("waists must be > 0")
    wp2, ws2, wi2 = waist_wp ** 2, waist_ws ** 2, waist_wi ** 2
    s = 1.0 / wp2 + 1.0 / ws2 + 1.0 / wi2
    return 1.0 / (wp2 * ws2 * wi2 * s * s)


def _gamma_curve(gamma):
    # relative rate for Ws = Wi = W, Wp = gamma W (the W^-2 scale divides out)
    g = np.asarray(gamma, dtype=float)
    return 1.0 / (1.0 / g + 2.0 * g) ** 2


def optimal_gamma() -> float:
    """Pump-to-collection waist ratio maximizing the pair rate, found by
    golden-section search on [0.05, 5] to 1e-9 (equals 1/sqrt(2))."""
    inv_phi = (math.sqrt(5.0) - 1.0) / 2.0
    a, b = 0.05, 5.0
    c = b - inv_phi * (b - a)
    d = a + inv_phi * (b - a)
    fc, fd = _gamma_curve(c), _gamma_curve(d)
    while b - a > 1e-9:
        if fc > fd:
            b, d, fd = d, c, fc
            c = b - inv_phi * (b - a)
            fc = _gamma_curve(c)
        else:
            a, c, fc = c, d, fd
            d = a + inv_phi * (b - a)
            fd = _gamma_curve(d)
    return 0.5 * (a + b)


def gamma_sweep(gamma_min: float, gamma_max: float, points: int):
    """Uniform sweep of the relative rate versus gamma = Wp/W, normalized
    to a maximum of 1.  Returns a list of (gamma, relative_rate)."""
    if not (0 < gamma_min < gamma_max):
        raise ValidationError("require 0 < gamma_min < gamma_max")
    if points < 2:
        raise ValidationError("points must be >= 2")
    g = np.linspace(gamma_min, gamma_max, points)
    y = _gamma_curve(g)
    y = y / y.max()
    return list(zip(g.tolist(), y.tolist()))


@dataclass(frozen=True)
class ComparisonRow:
    quantity: str
    model: float
    reference: float | None
    rel_deviation: float | None


def experiment_comparison(config: SourceConfig):
    """Side-by-side comparison of model outputs with the reference values
    carried in the config (observed/predicted rates, efficiencies).

    Returns ``(rows, report)`` where ``rows`` is a list of
    :class:`ComparisonRow` and ``report`` the underlying
    :class:`RateReport`.

    The observable rate applies the experiment-specific factors: the
    measured pair-to-singles ratio and the decay-path multiplicity
    (both come from the config, never enter R_T itself).  The
    per-length conversion efficiencies are quoted in the thin-crystal
    normalization, where the rate is strictly proportional to crystal
    length and "per mm" is well defined, again with the decay-path
    factor applied.
    """
    if config.pair_to_singles_ratio is None:
        raise ValidationError("pair_to_singles_ratio is required for the comparison")
    report = total_rate(config)
    ratio = config.pair_to_singles_ratio
    paths = config.decay_path_multiplicity
    observable = paths * ratio * report.R_T

    collinear = replace(
        config,
        signal=replace(config.signal, theta=0.0),
        idler=replace(config.idler, theta=0.0),
    )
    _, r_thin = thin_crystal_rates(collinear)
    omega_p = config.pump.omega
    length_mm = config.crystal.length_l * 1e3
    eff_mm = paths * r_thin * HBAR * omega_p / (config.pump_power_p * length_mm)
    eff_mm_sr = None
    if config.collection_solid_angle_sr:
        eff_mm_sr = eff_mm / config.collection_solid_angle_sr

    ref = config.reference_values or {}
    ref_xi = ref.get("xi")
    if (config.angle_convention is AngleConvention.INTERNAL_PHYSICS
            and ref_xi and abs(report.Xi - ref_xi) / ref_xi > 0.05):
        report.warnings.append(
            "walk-off parameter uses Snell-refracted internal angles and "
            "deviates from the reference value; the reference is reproduced "
            "under the 'paper_external_as_internal' convention"
        )
    per_mw = 1e3 * config.pump_power_p  # rates are quoted per mW of pump

    def row(name, model, key):
        r = ref.get(key)
        dev = (model - r) / r if r else None
        return ComparisonRow(name, model, r, dev)

    rows = [
        row("walk_off_parameter_Xi", report.Xi, "xi"),
        row("spectral_integral_S", report.S, "S"),
        row("R_T_pairs_per_mW_s", report.R_T / per_mw, "r_t_per_mw_s"),
        row("observable_pairs_per_mW_s", observable / per_mw,
            "predicted_observable_per_mw_s"),
        row("efficiency_per_mm", eff_mm, "efficiency_per_mm"),
    ]
    if eff_mm_sr is not None:
        rows.append(row("efficiency_per_mm_sr", eff_mm_sr, "efficiency_per_mm_sr"))
    observed = ref.get("observed_per_mw_s")
    if observed is not None:
        rows.append(ComparisonRow("observed_pairs_per_mW_s (experiment)",
                                  observed, None, None))
    return rows, report
