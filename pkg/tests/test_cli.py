import subprocess
import sys
import textwrap

import numpy as np
import pytest

from casimir_kk.cli import EXIT_COMPUTE, EXIT_CONFIG, EXIT_INPUT, EXIT_OK, main
from casimir_kk.constants import ideal_casimir_pressure

SMALL_DATA = """
[data.synthetic]
preset = "drude-lorentz-gold"
omega_min = 0.125
omega_max = 1.0e3
points_per_decade = 20

[drude]
omega_p = 9.0
gamma = 0.035
"""


def read_table(path):
    lines = [l for l in path.read_text().splitlines() if not l.startswith("#")]
    cols = lines[0].split(",")
    rows = [l.split(",") for l in lines[1:]]
    return cols, rows


def numeric(path, col):
    cols, rows = read_table(path)
    i = cols.index(col)
    return np.array([float(r[i]) for r in rows])


def run(tmp_path, command, body, *extra, name="run.toml", out="out"):
    cfg = tmp_path / name
    cfg.write_text(textwrap.dedent(body))
    code = main([command, "--config", str(cfg), "--out", str(tmp_path / out), "--no-timestamp", *extra])
    return code, tmp_path / out


def test_synth_writes_loadable_file(tmp_path):
    code, out = run(tmp_path, "synth", """
        [synth]
        preset = "drude-gold"
        omega_min = 0.1
        omega_max = 10.0
        points_per_decade = 10
        output = "g.csv"
    """)
    assert code == EXIT_OK
    cols, rows = read_table(out / "g.csv")
    assert cols == ["omega_eV", "n", "k"] and len(rows) == 21


def test_epsilon_columns_and_zero_b(tmp_path):
    code, out = run(tmp_path, "epsilon", SMALL_DATA + """
        [xi]
        values = [0.1, 0.5, 1.0, 5.0]
        [[window]]
        kind = "sqrt"
        b = 0.0
    """)
    assert code == EXIT_OK
    cols, _ = read_table(out / "epsilon_kk.csv")
    assert cols == ["xi_eV", "eps_total", "eps_cut", "eps_expt", "cut_fraction", "error"]
    assert np.all(numeric(out / "epsilon_comparison.csv", "diff_sqrt_b0_vs_kk_pct") == 0)


def test_epsilon_two_windows_agree(tmp_path):
    code, out = run(tmp_path, "epsilon", """
        [data.synthetic]
        preset = "drude-lorentz-gold"
        omega_min = 1.0e-3
        omega_max = 1.0e4
        points_per_decade = 50
        [drude]
        omega_p = 9.0
        gamma = 0.035
        [xi]
        start = 0.1
        stop = 10.0
        points_per_decade = 10
        [[window]]
        b = 1.0
        [[window]]
        b = 1.5
    """)
    assert code == EXIT_OK
    a = numeric(out / "epsilon_sqrt_b1.csv", "eps_total")
    b = numeric(out / "epsilon_sqrt_b1.5.csv", "eps_total")
    assert np.max(np.abs(a / b - 1)) < 1e-3


def test_epsilon_pure_drude_cut_dominates(tmp_path):
    code, out = run(tmp_path, "epsilon", """
        [data.synthetic]
        preset = "drude-gold"
        omega_min = 0.125
        omega_max = 1.0e4
        points_per_decade = 50
        [drude]
        omega_p = 9.0
        gamma = 0.035
        [xi]
        values = [0.1, 1.0]
    """)
    assert code == EXIT_OK
    assert numeric(out / "epsilon_kk.csv", "cut_fraction")[0] > 0.9


def test_epsilon_records_window_zero(tmp_path, capsys):
    code, out = run(tmp_path, "epsilon", SMALL_DATA + """
        [xi]
        values = [1.0, 2.4, 5.0]
        [[window]]
        kind = "old"
        w = [1.0, -2.0]
    """)
    assert code == EXIT_OK
    assert "vanishes near xi = 2.4" in capsys.readouterr().err
    cols, rows = read_table(out / "epsilon_old_p1_q3_w1-2i.csv")
    assert [r[-1] for r in rows] == ["", "window zero", ""]
    assert rows[1][1] == "nan"


def test_pressure_ideal_metal(tmp_path):
    code, out = run(tmp_path, "pressure", """
        [casimir]
        material = "ideal"
        ideal_eps = 1.0e10
        separations_nm = [1000.0]
        temperature = 1.0
    """)
    assert code == EXIT_OK
    p = numeric(out / "pressure.csv", "P_ideal_Pa")[0]
    assert p / ideal_casimir_pressure(1e-6) == pytest.approx(1.0, abs=0.01)


def test_pressure_variants(tmp_path):
    code, out = run(tmp_path, "pressure", SMALL_DATA + """
        [[window]]
        b = 1.0
        [casimir]
        separations_nm = [200.0, 500.0]
        temperature = 300.0
        drop_cut = true
        [generalized_plasma]
        omega_p = 9.0
        omega_inter = 2.0
        b = [1.0]
    """)
    assert code == EXIT_OK
    cols, rows = read_table(out / "pressure.csv")
    for c in ("a_m", "P_kk_Pa", "P_kk_nocut_Pa", "P_sqrt_b1_Pa", "P_gp_Pa", "P_gp_sqrt_b1_Pa",
              "diff_kk_vs_sqrt_b1_pct", "diff_gp_vs_gp_sqrt_b1_pct"):
        assert c in cols
    assert len(rows) == 2
    assert np.all(np.abs(numeric(out / "pressure.csv", "diff_kk_vs_sqrt_b1_pct")) < 0.15)
    assert np.all(np.abs(numeric(out / "pressure.csv", "diff_gp_vs_gp_sqrt_b1_pct")) < 0.5)


MC_BODY = SMALL_DATA + """
    [xi]
    values = [0.5, 1.0, 5.0]
    [[window]]
    b = 1.0
    [noise]
    delta_exp = 0.03
    n_resamples = 30
    seed = 5
"""


def test_mc_footer_and_columns(tmp_path):
    code, out = run(tmp_path, "mc", MC_BODY, "--threads", "3")
    assert code == EXIT_OK
    text = (out / "mc.csv").read_text()
    assert "# negative_eps_resamples,sqrt_b1=0" in text
    assert "# seed: 5" in text
    assert np.all(numeric(out / "mc.csv", "delta_eps_rel_percent_sqrt_b1") > 0)


@pytest.mark.parametrize(
    "command, body",
    [
        ("epsilon", SMALL_DATA + "[xi]\nvalues = [0.5, 1.0]\n[[window]]\nb = 1.0\n"),
        ("mc", MC_BODY),
        ("pressure", SMALL_DATA + "[casimir]\nseparations_nm = [300.0]\n"),
    ],
)
def test_reruns_byte_identical(tmp_path, command, body):
    _, first = run(tmp_path, command, body, out="a")
    _, second = run(tmp_path, command, body, out="b")
    names = sorted(p.name for p in first.iterdir())
    assert names == sorted(p.name for p in second.iterdir())
    for n in names:
        assert (first / n).read_bytes() == (second / n).read_bytes()


def test_mc_thread_count_does_not_change_bytes(tmp_path):
    _, a = run(tmp_path, "mc", MC_BODY, "--threads", "1", out="a")
    _, b = run(tmp_path, "mc", MC_BODY, "--threads", "4", out="b")
    assert (a / "mc.csv").read_bytes() == (b / "mc.csv").read_bytes()


def test_timestamp_line_optional(tmp_path):
    cfg = tmp_path / "r.toml"
    cfg.write_text("[casimir]\nmaterial = 'ideal'\nseparations_nm = [1000.0]\ntemperature = 1.0\n")
    assert main(["pressure", "--config", str(cfg), "--out", str(tmp_path / "o")]) == EXIT_OK
    assert "# timestamp:" in (tmp_path / "o" / "pressure.csv").read_text()


def test_fit_report(tmp_path):
    run(tmp_path, "synth", "[synth]\npreset='custom'\nomega_p=9.0\ngamma=0.035\nomega_min=0.01\n"
        "omega_max=10.0\noutput='a.csv'\n", out="data", name="s1.toml")
    run(tmp_path, "synth", "[synth]\npreset='custom'\nomega_p=7.7\ngamma=0.035\nomega_min=0.01\n"
        "omega_max=10.0\noutput='b.csv'\n", out="data", name="s2.toml")
    code, out = run(tmp_path, "fit", """
        [data]
        files = [{ path = "data/a.csv", label = "a" }, { path = "data/b.csv", label = "b" }]
        [fit]
        probes_eV = [0.6, 0.8]
    """)
    assert code == EXIT_OK
    wp = numeric(out / "fit.csv", "omega_p_eV")
    assert wp[0] == pytest.approx(9.0, rel=0.01) and wp[1] == pytest.approx(7.7, rel=0.01)
    assert "FLAG omega_p of a and b" in (out / "consistency.csv").read_text()


def test_plot_flag_writes_png(tmp_path):
    code, out = run(tmp_path, "epsilon", SMALL_DATA + "[xi]\nvalues = [0.5, 1.0, 2.0]\n[[window]]\nb = 1.0\n", "--plot")
    assert code == EXIT_OK
    assert (out / "cut_fraction.png").stat().st_size > 0
    assert (out / "epsilon_comparison.png").exists()


@pytest.mark.parametrize(
    "body, code",
    [
        ("[xi\n", EXIT_CONFIG),
        ("[data]\nfiles = [{ path = 'missing.csv' }]\n[xi]\nvalues=[1.0]\n", EXIT_CONFIG),
        (SMALL_DATA + "[xi]\nvalues=[1.0]\n[[window]]\nkind='triangle'\n", EXIT_CONFIG),
        (SMALL_DATA + "[xi]\nvalues=[1.0]\n[[window]]\nb = 5000.0\n", EXIT_CONFIG),
        (SMALL_DATA + "[xi]\nvalues=[2.0, 1.0]\n", EXIT_CONFIG),
        (SMALL_DATA, EXIT_CONFIG),
        ("[data]\nfiles = [{ path = 'bad.csv' }]\n[xi]\nvalues=[1.0]\n", EXIT_INPUT),
    ],
)
def test_epsilon_exit_codes(tmp_path, body, code):
    (tmp_path / "bad.csv").write_text("omega_eV,n,k\n1,1,1\n2,oops,1\n3,1,1\n4,1,1\n")
    got, _ = run(tmp_path, "epsilon", body)
    assert got == code


def test_computation_error_exit_code(tmp_path):
    got, _ = run(tmp_path, "pressure", "[casimir]\nmaterial='ideal'\nideal_eps=0.5\nseparations_nm=[100.0]\n")
    assert got == EXIT_COMPUTE


def test_missing_config_file(tmp_path):
    assert main(["epsilon", "--config", str(tmp_path / "none.toml")]) == EXIT_CONFIG


def test_console_entry_point(tmp_path):
    res = subprocess.run(
        [sys.executable, "-m", "casimir_kk.cli", "--version"], capture_output=True, text=True
    )
    assert res.returncode == 0 and "0.1.0" in res.stdout
