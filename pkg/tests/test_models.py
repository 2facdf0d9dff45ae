import numpy as np
import pytest

from casimir_kk.core import make_log_grid
from casimir_kk.models import (
    GOLD_DRUDE,
    PRESETS,
    DrudeParams,
    GeneralizedPlasmaSpec,
    LorentzOscillator,
    drude_eps_imag_axis,
    drude_eps_real_axis,
    drude_loss,
    drude_one_minus_real,
    gp_eps_imag_axis_direct,
    gp_eps_imag_axis_windowed,
    model_eps_imag_axis,
    plasma_eps_real_axis,
    preset,
    synthetic_dataset,
)


def test_drude_params_validation():
    with pytest.raises(ValueError):
        DrudeParams(0.0, 0.1)
    with pytest.raises(ValueError):
        DrudeParams(9.0, -0.1)
    assert DrudeParams(9.0, 0.0).gamma == 0.0


def test_scaled():
    p = GOLD_DRUDE.scaled(d_omega_p=0.02, d_gamma=0.14)
    assert p.omega_p == pytest.approx(9.18) and p.gamma == pytest.approx(0.0399)


def test_drude_real_axis_pieces():
    w = np.array([0.1, 1.0, 3.0])
    eps = drude_eps_real_axis(GOLD_DRUDE, w)
    assert np.allclose(eps.imag, drude_loss(GOLD_DRUDE, w))
    assert np.allclose(1 - eps.real, drude_one_minus_real(GOLD_DRUDE, w))
    with pytest.raises(ValueError):
        drude_eps_real_axis(GOLD_DRUDE, 0.0)
    with pytest.raises(ValueError):
        drude_eps_real_axis(DrudeParams(9.0, 0.0), 1.0)
    assert plasma_eps_real_axis(9.0, 3.0) == pytest.approx(1 - 9.0)


def test_drude_imag_axis_closed_form():
    assert drude_eps_imag_axis(GOLD_DRUDE, 1.0) == pytest.approx(1 + 81 / 1.035)
    assert drude_eps_imag_axis(DrudeParams(9.0, 0.0), 3.0) == pytest.approx(10.0)
    with pytest.raises(ValueError):
        drude_eps_imag_axis(GOLD_DRUDE, 0.0)


def test_lorentz_oscillator_static_limit():
    osc = LorentzOscillator(2.0, 3.0, 0.5)
    assert osc.eps_imag_axis(1e-9) == pytest.approx(2.0)
    assert osc.eps_real_axis(1e-9).real == pytest.approx(2.0)
    assert osc.eps_real_axis(3.0).imag > 0


def test_presets():
    assert set(PRESETS) == {"drude-gold", "drude-lorentz-gold"}
    p, osc = preset("drude-gold")
    assert (p.omega_p, p.gamma, osc) == (9.0, 0.035, ())
    with pytest.raises(KeyError):
        preset("silver")


def test_synthetic_dataset_matches_model():
    p, osc = preset("drude-lorentz-gold")
    d = synthetic_dataset(p, osc, make_log_grid(0.1, 10, 10))
    assert np.all(d.k > 0)
    assert "omega_p=9.0" in d.source_meta
    assert model_eps_imag_axis(p, osc, 1.0) > drude_eps_imag_axis(p, 1.0)


@pytest.fixture(scope="module")
def gp_spec():
    # one narrow core resonance at 4 eV, tabulated well past it
    osc = LorentzOscillator(3.0, 4.0, 0.4)
    grid = make_log_grid(2.0, 1e4, 100)
    core = synthetic_dataset(DrudeParams(1e-9, 1.0), (osc,), grid, label="core")
    return GeneralizedPlasmaSpec(omega_p=9.0, omega_inter=2.0, core_data=core), osc


def test_gp_direct_matches_model(gp_spec):
    spec, osc = gp_spec
    xi = np.array([0.2, 1.0, 3.0])
    got = gp_eps_imag_axis_direct(spec, xi)
    want = 1 + 81 / xi**2 + osc.eps_imag_axis(xi)
    assert np.allclose(got, want, rtol=5e-3)


@pytest.mark.parametrize("b", [0.5, 1.0, 1.5])
def test_gp_windowed_agrees_with_direct(gp_spec, b):
    spec, _ = gp_spec
    xi = make_log_grid(0.1, 10, 5)
    d = gp_eps_imag_axis_direct(spec, xi)
    w = gp_eps_imag_axis_windowed(spec, xi, b)
    assert np.max(np.abs(w / d - 1)) < 5e-3


def test_gp_windowed_b_limits(gp_spec):
    spec, _ = gp_spec
    xi = np.array([1.0])
    assert gp_eps_imag_axis_windowed(spec, xi, 0.0) == pytest.approx(gp_eps_imag_axis_direct(spec, xi))
    with pytest.raises(ValueError):
        gp_eps_imag_axis_windowed(spec, xi, 2.0)


def test_gp_without_core_is_plasma():
    spec = GeneralizedPlasmaSpec(omega_p=9.0, omega_inter=2.0)
    assert gp_eps_imag_axis_direct(spec, 3.0)[0] == pytest.approx(10.0)
