import math

import pytest

import spdcgauss as sg
from spdcgauss.modes import GaussianMode, Role
from spdcgauss.rates import AngleConvention, PolarizationAssignment, SourceConfig


@pytest.fixture(scope="session")
def bbo_config():
    """The shipped BBO worked example (paper-matching angle convention)."""
    return sg.load_config(sg.builtin_config_path("bbo_branciard"))


@pytest.fixture(scope="session")
def material_db():
    return sg.load_material_db()


def make_config(
    theta_deg=3.1,
    waist_um=82.0,
    power_mw=1.0,
    length_mm=2.0,
    lambda_p_nm=351.1,
    n_p=1.6284957148835988,
    n_s=1.6648059823944632,
    n_i=1.594070306308749,
    convention=AngleConvention.PAPER_EXTERNAL_AS_INTERNAL,
    material_db=None,
    d22_scale=1.0,
):
    """BBO-like source built directly from modes (bypasses the config file)."""
    db = material_db or sg.load_material_db()
    mat = db["BBO"]
    if d22_scale != 1.0:
        import dataclasses
        mat = dataclasses.replace(mat, d22_m_per_v=mat.d22_m_per_v * d22_scale)
    crystal = sg.CrystalSpec.from_material(
        mat, length_l=length_mm * 1e-3,
        theta_c=math.radians(49.7), phi_c=math.radians(60.0))
    lam_p = lambda_p_nm * 1e-9
    lam_d = 2 * lam_p
    w = waist_um * 1e-6
    th = math.radians(theta_deg)
    return SourceConfig(
        pump_power_p=power_mw * 1e-3,
        pump=GaussianMode(w, lam_p, 0.0, n_p, Role.PUMP),
        signal=GaussianMode(w, lam_d, th, n_s, Role.SIGNAL),
        idler=GaussianMode(w, lam_d, th, n_i, Role.IDLER),
        crystal=crystal,
        external_collection_angle=th,
        angle_convention=convention,
        polarization_assignment=PolarizationAssignment.SIGNAL_ORDINARY,
        collection_solid_angle_sr=3.3e-5,
        pair_to_singles_ratio=0.23,
    )


@pytest.fixture()
def config_factory():
    return make_config
