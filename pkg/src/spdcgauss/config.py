"""Source-configuration files: JSON with explicit unit suffixes in the
field names (``waist_um``, ``wavelength_nm``, ``power_mw``, ``length_mm``,
``angle_deg``), converted to SI on load.

Loading resolves everything the rate model needs: the crystal is looked
up in the material database, refractive indices are assigned (pump
extraordinary at the cut angle, as phase matching in a negative uniaxial
crystal requires; daughters ordinary/extraordinary per the configured
assignment, the extraordinary one evaluated at the cut angle), and the
external collection angle is converted per the angle convention.
"""

from __future__ import annotations

import json
import math
from importlib import resources

from . import materials
from .errors import ParseError, UnknownMaterial, ValidationError
from .modes import GaussianMode, Role
from .rates import AngleConvention, PolarizationAssignment, SourceConfig

__all__ = ["load_config", "config_from_dict", "apply_overrides", "builtin_config_path"]


def builtin_config_path(name: str = "bbo_branciard") -> str:
    """Filesystem path of a configuration shipped with the package."""
    return str(resources.files("spdcgauss").joinpath(f"data/{name}.json"))


def _get(d: dict, path: str, typ, required=True, default=None):
    cur = d
    parts = path.split(".")
    for p in parts[:-1]:
        cur = cur.get(p, {}) if isinstance(cur, dict) else {}
    leaf = cur.get(parts[-1]) if isinstance(cur, dict) else None
    if leaf is None:
        if required:
            raise ValidationError(f"missing required field {path!r}")
        return default
    if typ is float and isinstance(leaf, (int, float)) and not isinstance(leaf, bool):
        return float(leaf)
    if typ is int and isinstance(leaf, int) and not isinstance(leaf, bool):
        return leaf
    if typ is str and isinstance(leaf, str):
        return leaf
    if typ is dict and isinstance(leaf, dict):
        return leaf
    raise ParseError(f"field {path!r}: expected {typ.__name__}, got {type(leaf).__name__}")


def apply_overrides(raw: dict, overrides) -> dict:
    """Apply ``KEY=VALUE`` overrides (dotted key paths) onto the raw
    config dict.  Values are parsed as JSON scalars, falling back to
    strings."""
    for item in overrides or []:
        if "=" not in item:
            raise ValidationError(f"override {item!r} is not KEY=VALUE")
        key, _, value = item.partition("=")
        try:
            parsed = json.loads(value)
        except json.JSONDecodeError:
            parsed = value
        cur = raw
        parts = key.strip().split(".")
        for p in parts[:-1]:
            cur = cur.setdefault(p, {})
            if not isinstance(cur, dict):
                raise ValidationError(f"override {key!r}: {p!r} is not an object")
        cur[parts[-1]] = parsed
    return raw


def config_from_dict(raw: dict, material_db: dict) -> SourceConfig:
    """Validate a raw config dict and resolve it into a SourceConfig."""
    lam_p = _get(raw, "pump.wavelength_nm", float) * 1e-9
    power = _get(raw, "pump.power_mw", float) * 1e-3
    waist_p = _get(raw, "pump.waist_um", float) * 1e-6
    waist_s = _get(raw, "signal.waist_um", float) * 1e-6
    waist_i = _get(raw, "idler.waist_um", float) * 1e-6
    lam_d = 2.0 * lam_p
    lam_s = _get(raw, "signal.wavelength_nm", float, required=False)
    lam_i = _get(raw, "idler.wavelength_nm", float, required=False)
    lam_s = lam_s * 1e-9 if lam_s is not None else lam_d
    lam_i = lam_i * 1e-9 if lam_i is not None else lam_d

    mat_name = _get(raw, "crystal.material", str)
    if mat_name not in material_db:
        raise UnknownMaterial(
            f"crystal.material {mat_name!r} not in database "
            f"(known: {', '.join(sorted(material_db))})"
        )
    crystal = materials.CrystalSpec.from_material(
        material_db[mat_name],
        length_l=_get(raw, "crystal.length_mm", float) * 1e-3,
        theta_c=math.radians(_get(raw, "crystal.theta_c_deg", float)),
        phi_c=math.radians(_get(raw, "crystal.phi_c_deg", float)),
    )

    conv_raw = _get(raw, "angle_convention", str, required=False)
    if conv_raw is None:
        conv = AngleConvention.INTERNAL_PHYSICS
    else:
        try:
            conv = AngleConvention(conv_raw)
        except ValueError:
            raise ValidationError(
                f"angle_convention {conv_raw!r}: allowed values are "
                + ", ".join(repr(c.value) for c in AngleConvention)
            ) from None

    pol_raw = _get(raw, "polarization_assignment", str, required=False)
    if pol_raw is None:
        raise ValidationError(
            "missing required field 'polarization_assignment': allowed values are "
            + ", ".join(repr(p.value) for p in PolarizationAssignment)
        )
    try:
        pol = PolarizationAssignment(pol_raw)
    except ValueError:
        raise ValidationError(
            f"polarization_assignment {pol_raw!r}: allowed values are "
            + ", ".join(repr(p.value) for p in PolarizationAssignment)
        ) from None

    # pump is extraordinary-polarized at the cut angle; the extraordinary
    # daughter's small tilt off the cut angle is neglected in its index
    n_p = materials.index_extraordinary(crystal, lam_p, crystal.theta_c)
    n_ord = materials.index_ordinary(crystal, lam_s)
    n_ext = materials.index_extraordinary(crystal, lam_i, crystal.theta_c)
    if pol is PolarizationAssignment.SIGNAL_ORDINARY:
        n_s, n_i = n_ord, n_ext
    else:
        n_s, n_i = n_ext, n_ord

    theta_ext = math.radians(_get(raw, "collection.external_angle_deg", float))
    if conv is AngleConvention.INTERNAL_PHYSICS:
        th_s = materials.internal_angle(theta_ext, n_s)
        th_i = materials.internal_angle(theta_ext, n_i)
    else:
        th_s = th_i = theta_ext

    pump = GaussianMode(waist_p, lam_p, 0.0, n_p, Role.PUMP)
    signal = GaussianMode(waist_s, lam_s, th_s, n_s, Role.SIGNAL)
    idler = GaussianMode(waist_i, lam_i, th_i, n_i, Role.IDLER)

    decay_paths = _get(raw, "collection.decay_paths", int, required=False, default=2)
    if decay_paths < 1:
        raise ValidationError("collection.decay_paths must be >= 1")

    return SourceConfig(
        pump_power_p=power,
        pump=pump,
        signal=signal,
        idler=idler,
        crystal=crystal,
        external_collection_angle=theta_ext,
        angle_convention=conv,
        polarization_assignment=pol,
        collection_solid_angle_sr=_get(raw, "collection.solid_angle_sr", float,
                                       required=False),
        pair_to_singles_ratio=_get(raw, "collection.pair_to_singles_ratio", float,
                                   required=False),
        decay_path_multiplicity=decay_paths,
        reference_values=_get(raw, "reference", dict, required=False, default={}),
    )


def load_config(path: str, material_db_path: str | None = None,
                overrides=None) -> SourceConfig:
    """Load, validate and resolve a source-configuration file."""
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise ParseError(f"cannot read config {path}: {exc}") from exc
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path} line {exc.lineno}: {exc.msg}") from exc
    if not isinstance(raw, dict):
        raise ParseError(f"{path}: top level must be a JSON object")
    raw = apply_overrides(raw, overrides)
    db = materials.load_material_db(material_db_path)
    return config_from_dict(raw, db)
