"""Acceptance criteria 1-10, one test each, each printing a PASS/FAIL line."""

import textwrap
import time
from dataclasses import replace

import numpy as np
from hypothesis import given, settings
from hypothesis import strategies as st

from casimir_kk.cli import main
from casimir_kk.constants import ideal_casimir_pressure
from casimir_kk.core import make_log_grid
from casimir_kk.dispersion import (
    Identity,
    OldRational,
    SqrtWindow,
    WindowedTransform,
    cut_fraction,
    kk_standard,
    kk_windowed,
)
from casimir_kk.fitting import fit_plasma_frequency
from casimir_kk.lifshitz import CasimirConfig, constant_provider, fresnel_imag, pressure, provider_from_result
from casimir_kk.models import (
    GOLD_DRUDE,
    GOLD_INTERBAND,
    DrudeParams,
    GeneralizedPlasmaSpec,
    LorentzOscillator,
    drude_eps_imag_axis,
    gp_eps_imag_axis_direct,
    gp_eps_imag_axis_windowed,
    synthetic_dataset,
)
from casimir_kk.quadrature import QuadratureConfig
from casimir_kk.uncertainty import NoiseSpec, cover_grid, drude_pressure_sensitivity, mc_uncertainty

XI_ORACLE = np.array([0.16, 0.5, 1.0, 2.0, 5.0, 10.0])


def test_criterion_01_drude_oracle(criterion, drude_wide):
    t0 = time.perf_counter()
    exact = drude_eps_imag_axis(GOLD_DRUDE, XI_ORACLE)
    worst = {}
    for w in (Identity(), SqrtWindow(1.0), SqrtWindow(1.5), SqrtWindow(3.0)):
        res = kk_windowed(drude_wide, GOLD_DRUDE, w, XI_ORACLE)
        worst[str(w)] = float(np.max(np.abs(res.eps_total / exact - 1)))
    elapsed = time.perf_counter() - t0
    err = max(worst.values())
    criterion(1, err < 5e-3 and elapsed < 5.0,
              f"Drude oracle max rel err {100 * err:.4f}% (< 0.5%), {elapsed:.2f} s (< 5 s)")


def test_criterion_02_suppression_ordering(criterion, drude_sample5):
    xi = [0.1, 0.5]
    kk = cut_fraction(kk_standard(drude_sample5, GOLD_DRUDE, xi))
    win = cut_fraction(kk_windowed(drude_sample5, GOLD_DRUDE, SqrtWindow(1.0), xi))
    ok = win[0] < 0.15 and kk[0] > 0.5 and win[1] < 0.05
    criterion(2, ok, f"cut fraction xi=0.1: window {100 * win[0]:.1f}% (< 15%), KK {100 * kk[0]:.1f}% (> 50%); "
                     f"xi=0.5: window {100 * win[1]:.2f}% (< 5%)")


def test_criterion_03_ideal_metal(criterion):
    t0 = time.perf_counter()
    p = pressure(constant_provider(1e10), CasimirConfig(1e-6, 1.0))
    elapsed = time.perf_counter() - t0
    ratio = p / ideal_casimir_pressure(1e-6)
    criterion(3, abs(ratio - 1) < 0.01 and elapsed < 10.0,
              f"P / P_ideal = {ratio:.5f} (within 1%), {elapsed:.2f} s (< 10 s)")


def _deficit(data):
    cfg = CasimirConfig(100e-9, 300.0)
    res = kk_standard(data, GOLD_DRUDE, cover_grid(cfg, [100e-9]))
    full = pressure(provider_from_result(res), cfg)
    nocut = pressure(provider_from_result(res, use_cut=False), cfg)
    return 1 - nocut / full


def test_criterion_04_drop_the_cut(criterion, dl_handbook):
    # fixture: drude-lorentz-gold, which carries interband absorption like handbook data
    deficit = _deficit(dl_handbook)
    pure = _deficit(synthetic_dataset(GOLD_DRUDE, (), make_log_grid(0.125, 1e4, 50)))
    criterion(4, 0.20 <= deficit <= 0.40,
              f"|P| deficit without eps_cut at 100 nm: {100 * deficit:.1f}% (20-40%) "
              f"[drude-lorentz-gold; pure drude-gold gives {100 * pure:.1f}%]")


def test_criterion_05_instability_contrast(criterion):
    t0 = time.perf_counter()
    data = synthetic_dataset(GOLD_DRUDE, GOLD_INTERBAND, make_log_grid(0.125, 1e4, 100))
    xi = make_log_grid(0.1, 10.0, 10)
    noise = NoiseSpec(0.03, n_resamples=1000, seed=20240601)
    old = mc_uncertainty(data, GOLD_DRUDE, OldRational(1, 3, 1 - 2j), xi, noise, on_error="record")
    new = mc_uncertainty(data, GOLD_DRUDE, SqrtWindow(1.0), xi, noise)
    elapsed = time.perf_counter() - t0
    old_max = float(np.nanmax(old.delta_eps_rel))
    new_max = float(np.max(new.delta_eps_rel))
    ratio = old_max / new_max
    ok = ratio >= 10 and new_max < 0.01 and elapsed < 120
    criterion(5, ok, f"max delta_eps/eps old {100 * old_max:.1f}%, sqrt b=1 {100 * new_max:.3f}% (< 1%), "
                     f"ratio {ratio:.0f} (>= 10), {int(old.n_negative.sum())} negative old resamples, "
                     f"{elapsed:.1f} s (< 120 s)")


def test_criterion_06_drude_parameter_sensitivity(criterion, drude_sample5):
    seps = np.geomspace(100e-9, 1e-6, 6)
    cfg = CasimirConfig(100e-9, 300.0)
    kk = drude_pressure_sensitivity(drude_sample5, GOLD_DRUDE, Identity(), cfg, seps, 0.02, 0.14)
    win = drude_pressure_sensitivity(drude_sample5, GOLD_DRUDE, SqrtWindow(1.0), cfg, seps, 0.02, 0.14)
    smaller = all(abs(w[1]) < abs(k[1]) and abs(w[2]) < abs(k[2]) for w, k in zip(win, kk))
    win_max = max(max(abs(w[1]), abs(w[2])) for w in win)
    kk_max = max(max(abs(k[1]), abs(k[2])) for k in kk)
    criterion(6, smaller and win_max < 0.2,
              f"windowed max |dP/P| {win_max:.3f}% (< 0.2%) vs standard KK {kk_max:.2f}%; "
              f"windowed smaller at every a: {smaller}")


def test_criterion_07_window_consistency(criterion, dl_wide):
    seps = np.geomspace(50e-9, 7e-6, 8)
    cfg = CasimirConfig(50e-9, 300.0)
    xi = cover_grid(cfg, seps)
    p1 = provider_from_result(kk_windowed(dl_wide, GOLD_DRUDE, SqrtWindow(1.0), xi))
    p2 = provider_from_result(kk_windowed(dl_wide, GOLD_DRUDE, SqrtWindow(1.5), xi))
    diffs = [abs(pressure(p1, replace(cfg, separation=a)) / pressure(p2, replace(cfg, separation=a)) - 1)
             for a in seps]
    worst = 100 * max(diffs)
    criterion(7, worst < 0.15, f"b=1 vs b=1.5 pressure max diff {worst:.4f}% over 50 nm-7 um (< 0.15%)")


def test_criterion_08_plasma_frequency_fit(criterion, drude_wide):
    fit = fit_plasma_frequency(drude_wide)
    err = abs(fit.omega_p / 9.0 - 1)
    criterion(8, err < 0.01, f"fitted omega_p {fit.omega_p:.4f} eV vs 9 (within 1%: {100 * err:.2f}%); "
                             "measured-data checks in test_fitting.py run when files are supplied")


def test_criterion_09_generalized_plasma(criterion):
    osc = LorentzOscillator(3.0, 4.0, 0.4)
    core = synthetic_dataset(DrudeParams(1e-9, 1.0), (osc,), make_log_grid(2.0, 1e4, 100), label="core")
    spec = GeneralizedPlasmaSpec(omega_p=9.0, omega_inter=2.0, core_data=core)
    xi = make_log_grid(0.1, 10.0, 10)
    direct = gp_eps_imag_axis_direct(spec, xi)
    worst = max(float(np.max(np.abs(gp_eps_imag_axis_windowed(spec, xi, b) / direct - 1))) for b in (0.5, 1.0, 1.5))
    criterion(9, worst < 5e-3, f"direct vs windowed generalized plasma max diff {100 * worst:.4f}% (< 0.5%)")


@settings(max_examples=30, deadline=None)
@given(st.floats(1.0, 1e12), st.floats(1e-3, 1e2), st.floats(1e3, 1e10))
def _reflection_bounds(eps, xi, k):
    r_te, r_tm = fresnel_imag(eps, xi, k)
    assert -1 <= r_te <= 0 <= r_tm <= 1


def _cli_bytes(tmp_path, tag):
    cfg = tmp_path / "mc.toml"
    cfg.write_text(textwrap.dedent("""
        [data.synthetic]
        preset = "drude-lorentz-gold"
        omega_min = 0.125
        omega_max = 1.0e3
        points_per_decade = 20
        [drude]
        omega_p = 9.0
        gamma = 0.035
        [xi]
        values = [0.5, 1.0, 5.0]
        [[window]]
        b = 1.0
        [noise]
        delta_exp = 0.03
        n_resamples = 20
        seed = 1
    """))
    out = tmp_path / tag
    assert main(["mc", "--config", str(cfg), "--out", str(out), "--no-timestamp"]) == 0
    return (out / "mc.csv").read_bytes()


def test_criterion_10_property_suites(criterion, tmp_path, dl_wide, drude_sample5):
    t0 = time.perf_counter()
    checks = {}
    xi = XI_ORACLE
    checks["kernel positivity"] = all(
        WindowedTransform(drude_sample5, GOLD_DRUDE, SqrtWindow(b), xi).kernel_is_positive(drude_sample5)
        for b in (0.05, 0.5, 1.0, 3.0, 8.0)
    )
    quad = QuadratureConfig(rel_tol=1e-7)
    ref = kk_standard(dl_wide, GOLD_DRUDE, xi, quad).eps_total
    small_b = kk_windowed(dl_wide, GOLD_DRUDE, SqrtWindow(1e-4), xi, quad).eps_total
    zero_b = kk_windowed(dl_wide, GOLD_DRUDE, SqrtWindow(0.0), xi, quad).eps_total
    checks["b=0 reduction"] = np.array_equal(zero_b, ref) and np.max(np.abs(small_b / ref - 1)) < 10 * quad.rel_tol
    res = kk_windowed(dl_wide, GOLD_DRUDE, SqrtWindow(1.0), xi)
    checks["decomposition"] = np.array_equal(res.eps_total, 1 + res.eps_cut + res.eps_expt)
    try:
        _reflection_bounds()
        checks["reflection bounds"] = True
    except AssertionError:
        checks["reflection bounds"] = False
    drude = lambda x: drude_eps_imag_axis(GOLD_DRUDE, x)  # noqa: E731
    conv = []
    for a in (50e-9, 1e-6, 7e-6):
        c = CasimirConfig(a, 300.0)
        conv.append(abs(pressure(drude, replace(c, n_max_factor=20.0)) / pressure(drude, c) - 1))
    checks["Matsubara truncation"] = max(conv) < 1e-3
    checks["byte-stable CLI"] = _cli_bytes(tmp_path, "a") == _cli_bytes(tmp_path, "b")
    elapsed = time.perf_counter() - t0
    failed = [k for k, v in checks.items() if not v]
    criterion(10, not failed and elapsed < 300,
              f"{len(checks) - len(failed)}/{len(checks)} property checks green"
              + (f" (failed: {', '.join(failed)})" if failed else "")
              + f", Matsubara doubling change {100 * max(conv):.4f}%, {elapsed:.1f} s")
