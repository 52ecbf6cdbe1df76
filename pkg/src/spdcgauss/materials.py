"""Uniaxial crystal optics: Sellmeier dispersion, the extraordinary index
ellipse, effective nonlinearity, refraction at the entrance face, and the
longitudinal wave-vector mismatch.

Dispersion coefficients are not hard-coded; they ship in a versioned JSON
database (``data/materials.json``) with the literature source recorded
next to the numbers.  Evaluation outside a model's validity window is an
error, never an extrapolation.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from importlib import resources

from .constants import C_LIGHT
from .errors import (
    DegenerateDispersion,
    EnergyMismatch,
    OutOfRange,
    ParseError,
    UnknownMaterial,
    ValidationError,
)

__all__ = [
    "SellmeierSet",
    "MaterialRecord",
    "CrystalSpec",
    "load_material_db",
    "index_ordinary",
    "index_extraordinary",
    "effective_nonlinearity_bbo",
    "internal_angle",
    "external_angle",
    "delta_k_z",
    "dispersion_factor",
]


def _n_sq_pole_quadratic(coeffs, lam_um):
    # n^2 = c0 + c1/(lam^2 - c2) - c3*lam^2, lam in micrometres
    c0, c1, c2, c3 = coeffs
    lam2 = lam_um * lam_um
    return c0 + c1 / (lam2 - c2) - c3 * lam2


_FORMS = {"pole_quadratic": _n_sq_pole_quadratic}


@dataclass(frozen=True)
class SellmeierSet:
    """One polarization branch of n^2(lambda).

    ``coefficients`` are interpreted by ``form`` (see ``_FORMS``);
    ``valid_range_m`` is the (min, max) vacuum wavelength in metres.
    """

    form: str
    coefficients: tuple
    valid_range_m: tuple

    def __post_init__(self):
        if self.form not in _FORMS:
            raise ValidationError(f"unknown dispersion form {self.form!r}")
        lo, hi = self.valid_range_m
        if not 0 < lo < hi:
            raise ValidationError("valid_range must satisfy 0 < min < max")
        # n^2 > 1 across the window, sampled
        for i in range(33):
            lam = lo + (hi - lo) * i / 32
            if not self.n_sq(lam) > 1.0:
                raise ValidationError(
                    f"n^2(lambda) <= 1 at {lam * 1e9:.1f} nm for form {self.form!r}"
                )

    def n_sq(self, lambda_vac_m: float) -> float:
        lo, hi = self.valid_range_m
        if not lo <= lambda_vac_m <= hi:
            raise OutOfRange(
                f"wavelength {lambda_vac_m * 1e9:.1f} nm outside validity window "
                f"[{lo * 1e9:.0f}, {hi * 1e9:.0f}] nm"
            )
        return _FORMS[self.form](self.coefficients, lambda_vac_m * 1e6)

    def index(self, lambda_vac_m: float) -> float:
        return math.sqrt(self.n_sq(lambda_vac_m))


@dataclass(frozen=True)
class MaterialRecord:
    """Material constants as shipped in the database (no geometry)."""

    name: str
    ordinary: SellmeierSet
    extraordinary: SellmeierSet
    d22_m_per_v: float
    source_citation: str


@dataclass(frozen=True)
class CrystalSpec:
    """A cut and sized uniaxial crystal.

    theta_c is the angle between the pump wave vector and the optic
    axis, phi_c the azimuthal angle; length_l the thickness along the
    pump direction.
    """

    name: str
    ordinary: SellmeierSet
    extraordinary: SellmeierSet
    d22_m_per_v: float
    length_l: float
    theta_c: float
    phi_c: float

    def __post_init__(self):
        if not self.length_l > 0:
            raise ValidationError("crystal length_l must be > 0")
        if not 0 <= self.theta_c <= math.pi / 2:
            raise ValidationError("theta_c must lie in [0, pi/2]")
        if not 0 <= self.phi_c < 2 * math.pi:
            raise ValidationError("phi_c must lie in [0, 2*pi)")

    @classmethod
    def from_material(cls, mat: MaterialRecord, length_l, theta_c, phi_c):
        return cls(mat.name, mat.ordinary, mat.extraordinary,
                   mat.d22_m_per_v, length_l, theta_c, phi_c)


def _sellmeier_from_json(obj, where):
    try:
        form = obj["form"]
        coeffs = tuple(float(c) for c in obj["coefficients"])
        lo_um, hi_um = obj["range_um"]
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"malformed Sellmeier entry at {where}: {exc}") from exc
    return SellmeierSet(form, coeffs, (float(lo_um) * 1e-6, float(hi_um) * 1e-6))


def load_material_db(path=None) -> dict:
    """Load the material database, returning {name: MaterialRecord}.

    ``path=None`` loads the database shipped with the package.
    """
    if path is None:
        text = resources.files("spdcgauss").joinpath("data/materials.json").read_text()
        where = "<builtin materials.json>"
    else:
        try:
            with open(path, encoding="utf-8") as fh:
                text = fh.read()
        except OSError as exc:
            raise ParseError(f"cannot read material database {path}: {exc}") from exc
        where = str(path)
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{where} line {exc.lineno}: {exc.msg}") from exc
    out = {}
    for i, m in enumerate(doc.get("materials", [])):
        label = f"{where}#materials[{i}]"
        try:
            name = m["name"]
            rec = MaterialRecord(
                name=name,
                ordinary=_sellmeier_from_json(m["ordinary"], label + ".ordinary"),
                extraordinary=_sellmeier_from_json(m["extraordinary"], label + ".extraordinary"),
                d22_m_per_v=float(m["d22_m_per_V"]),
                source_citation=str(m.get("source_citation", "")),
            )
        except KeyError as exc:
            raise ParseError(f"{label}: missing field {exc}") from exc
        out[name] = rec
    if not out:
        raise ParseError(f"{where}: no materials defined")
    return out


def index_ordinary(crystal: CrystalSpec, lambda_vac: float) -> float:
    """Ordinary refractive index n_o(lambda)."""
    return crystal.ordinary.index(lambda_vac)


def index_extraordinary(crystal: CrystalSpec, lambda_vac: float, theta: float) -> float:
    """Extraordinary index for propagation at angle ``theta`` to the optic
    axis, via the index ellipse

        1/n_e(theta)^2 = cos^2(theta)/n_o^2 + sin^2(theta)/n_ebar^2

    where n_ebar is the principal extraordinary index.  n_e(0) = n_o and
    n_e(pi/2) = n_ebar.
    """
    if not 0 <= theta <= math.pi / 2:
        raise ValidationError("theta must lie in [0, pi/2]")
    no2 = crystal.ordinary.n_sq(lambda_vac)
    ne2 = crystal.extraordinary.n_sq(lambda_vac)
    c, s = math.cos(theta), math.sin(theta)
    return 1.0 / math.sqrt(c * c / no2 + s * s / ne2)


def effective_nonlinearity_bbo(crystal: CrystalSpec) -> float:
    """Effective nonlinearity of the beta-BaB2O4 geometry class,

        d = d22 * cos^2(theta_c) * cos(3 phi_c)   [m/V, signed]

    Rates depend on d^2, so the sign is informational only.
    """
    return (crystal.d22_m_per_v
            * math.cos(crystal.theta_c) ** 2
            * math.cos(3.0 * crystal.phi_c))


def internal_angle(theta_external: float, n_inside: float) -> float:
    """Refraction at the exit face (surface normal to the pump):
    sin(theta_ext) = n_inside * sin(theta_int)."""
    if not 0 <= theta_external < math.pi / 2:
        raise ValidationError("theta_external must lie in [0, pi/2)")
    if n_inside < 1.0:
        raise ValidationError("n_inside must be >= 1")
    return math.asin(math.sin(theta_external) / n_inside)


def external_angle(theta_internal: float, n_inside: float) -> float:
    """Inverse of :func:`internal_angle`."""
    s = n_inside * math.sin(theta_internal)
    if s > 1.0:
        raise ValidationError("internal angle beyond total internal reflection")
    return math.asin(s)


def delta_k_z(n_s, n_i, n_p, omega_s, omega_i, omega_p, theta_s, theta_i) -> float:
    """Longitudinal wave-vector mismatch

        delta_k_z = (n_s w_s cos(theta_s) + n_i w_i cos(theta_i) - n_p w_p) / c

    in 1/m; zero at perfect longitudinal phase matching.  Angles are
    internal.  Only delta_k_z^2 enters the emission model, so the overall
    sign convention is immaterial downstream.
    """
    if abs(omega_p - omega_s - omega_i) > 1e-12 * omega_p:
        raise EnergyMismatch(
            f"omega_p - omega_s - omega_i = {omega_p - omega_s - omega_i:.6e} rad/s"
        )
    return (n_s * omega_s * math.cos(theta_s)
            + n_i * omega_i * math.cos(theta_i)
            - n_p * omega_p) / C_LIGHT


def dispersion_factor(n_s, n_i, theta_s, theta_i, epsilon: float = 1e-6) -> float:
    """d(delta_k_z)/d(omega_s) = (n_i cos(theta_i) - n_s cos(theta_s)) / c.

    Sign is preserved (it only reflects the signal/idler labelling).
    Raises :class:`DegenerateDispersion` when the bracket is smaller than
    ``epsilon`` in index units: the linearized change of variables from
    frequency to longitudinal mismatch breaks down there (e.g. type-I
    degenerate collinear operation).
    """
    bracket = n_i * math.cos(theta_i) - n_s * math.cos(theta_s)
    if abs(bracket) < epsilon:
        raise DegenerateDispersion(
            f"|n_i cos(theta_i) - n_s cos(theta_s)| = {abs(bracket):.3e} < {epsilon:.1e}"
        )
    return bracket / C_LIGHT
