"""Quick-look figures for the CLI tables (PNG, written next to the CSV files)."""

from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402

GOLDEN = (np.sqrt(5.0) - 1.0) / 2.0
FIG_WIDTH = 4.5

STYLE = {
    "font.size": 9,
    "axes.labelsize": 10,
    "legend.fontsize": 8,
    "xtick.labelsize": 9,
    "ytick.labelsize": 9,
    "lines.linewidth": 1.2,
    "mathtext.fontset": "stix",
    "figure.figsize": (FIG_WIDTH, FIG_WIDTH * GOLDEN),
    "figure.dpi": 150,
    "savefig.bbox": "tight",
}


def _save(fig, path):
    path = Path(path)
    # no Software/date metadata, so reruns give the same bytes
    fig.savefig(path, metadata={"Software": None})
    plt.close(fig)
    return path


def _lines(path, x, series, xlabel, ylabel, logx=True, logy=False):
    with plt.rc_context(STYLE):
        fig, ax = plt.subplots()
        for label, y in series.items():
            ax.plot(x, y, label=label)
        if logx:
            ax.set_xscale("log")
        if logy:
            ax.set_yscale("log")
        ax.set_xlabel(xlabel)
        ax.set_ylabel(ylabel)
        if len(series) > 1:
            ax.legend(frameon=False)
        return _save(fig, path)


def plot_cut_fraction(path, xi, fractions: dict):
    series = {k: 100.0 * np.asarray(v) for k, v in fractions.items()}
    return _lines(path, xi, series, r"$\xi$ (eV/$\hbar$)", r"$\epsilon_{\rm cut}/\epsilon$ (%)")


def plot_epsilon_diff(path, xi, diffs: dict):
    return _lines(path, xi, diffs, r"$\xi$ (eV/$\hbar$)", r"$\Delta\epsilon/\epsilon_{\rm KK}$ (%)")


def plot_pressure(path, a_m, pressures: dict):
    series = {k: np.abs(np.asarray(v)) for k, v in pressures.items()}
    return _lines(path, np.asarray(a_m) * 1e9, series, "a (nm)", "|P| (Pa)", logy=True)


def plot_pressure_diff(path, a_m, diffs: dict):
    return _lines(path, np.asarray(a_m) * 1e9, diffs, "a (nm)", r"$\Delta P/P$ (%)")


def plot_mc(path, xi, spreads: dict):
    return _lines(path, xi, spreads, r"$\xi$ (eV/$\hbar$)", r"$\delta\epsilon/\epsilon$ (%)", logy=True)


def plot_fit(path, datasets, fits):
    """eps' against lambda^2 with the fitted lines over their fit ranges."""
    from .constants import HC_EV_UM

    with plt.rc_context(STYLE):
        fig, ax = plt.subplots()
        for data, fit in zip(datasets, fits):
            lam2 = (HC_EV_UM / data.omega) ** 2
            (line,) = ax.plot(lam2, data.eps1, ".", ms=2, label=data.label)
            if hasattr(fit, "omega_p"):
                x = np.linspace(*fit.fit_range, 50)
                y = 1.0 + fit.eps_inter - (fit.omega_p / HC_EV_UM) ** 2 * x
                ax.plot(x, y, "-", color=line.get_color())
        ax.set_xlabel(r"$\lambda^2$ ($\mu$m$^2$)")
        ax.set_ylabel(r"$\epsilon'$")
        ax.legend(frameon=False)
        return _save(fig, path)
