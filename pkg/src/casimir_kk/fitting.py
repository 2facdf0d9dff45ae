"""Plasma frequency from the IR eps'-versus-lambda^2 law, interband constant, dataset consistency."""

from __future__ import annotations

import itertools
import math
import warnings
from dataclasses import dataclass
from typing import Optional, Sequence, Tuple

import numpy as np

from .constants import HC_EV_UM
from .core import OpticalDataset
from .dispersion import inverse_moment_parts
from .quadrature import QuadratureConfig, power_law_interp

DEFAULT_FIT_UPPER = 1.6  # eV/hbar, below the interband onset of noble metals
DEFAULT_GAMMA = 0.035  # eV/hbar
# lower bound in units of gamma: at 5 gamma the neglected gamma^2/omega^2
# curvature biases omega_p low by ~1.5 %, at 10 gamma by ~0.4 %
DEFAULT_GAMMA_FACTOR = 10.0
OMEGA_P_FLAG_THRESHOLD = 0.05


class FitError(ValueError):
    """The data do not show metallic eps' ~ -lambda^2 behaviour in the range."""


class FitQualityWarning(UserWarning):
    pass


class TailDominanceWarning(UserWarning):
    pass


@dataclass(frozen=True)
class PlasmaFit:
    """Result of the linear fit eps' = 1 + eps_inter - (omega_p / hc)^2 lambda^2.

    fit_range is (lambda^2_min, lambda^2_max) in um^2.
    """

    omega_p: float
    eps_inter: float
    fit_range: Tuple[float, float]
    residual_rms: float
    eps_inter_was_fitted: bool
    n_points: int


def default_fit_range(
    data: OpticalDataset,
    gamma: float = DEFAULT_GAMMA,
    upper: float = DEFAULT_FIT_UPPER,
    gamma_factor: float = DEFAULT_GAMMA_FACTOR,
):
    """Frequency interval (lo, hi): above ``gamma_factor * gamma``, below ``upper``, inside the data."""
    return max(gamma_factor * gamma, data.omega_min), min(upper, data.omega_max)


def fit_plasma_frequency(
    data: OpticalDataset,
    freq_range: Optional[Tuple[float, float]] = None,
    eps_inter_fixed: Optional[float] = None,
) -> PlasmaFit:
    """Least-squares line of eps' against lambda^2 over ``freq_range`` (eV/hbar).

    With ``eps_inter_fixed`` the intercept is pinned to 1 + eps_inter and only
    the slope is fitted.
    """
    lo, hi = freq_range if freq_range is not None else default_fit_range(data)
    sel = (data.omega >= lo) & (data.omega <= hi)
    if np.count_nonzero(sel) < 3:
        raise FitError(f"need at least 3 samples in [{lo:g}, {hi:g}] eV/hbar, found {np.count_nonzero(sel)}")
    lam2 = (HC_EV_UM / data.omega[sel]) ** 2
    eps1 = data.eps1[sel]
    if eps_inter_fixed is None:
        slope, intercept = np.polyfit(lam2, eps1, 1)
        eps_inter = intercept - 1.0
    else:
        eps_inter = float(eps_inter_fixed)
        intercept = 1.0 + eps_inter
        slope = float(np.dot(lam2, eps1 - intercept) / np.dot(lam2, lam2))
    if slope >= 0:
        raise FitError(f"eps' does not decrease with lambda^2 (slope {slope:.4g}); no metallic behaviour")
    resid = eps1 - (intercept + slope * lam2)
    rms = float(np.sqrt(np.mean(resid**2)))
    if rms > 0.01 * float(np.mean(np.abs(eps1))):
        warnings.warn(
            f"linear eps'(lambda^2) fit residual {rms:.3g} exceeds 1% of mean |eps'|",
            FitQualityWarning,
            stacklevel=2,
        )
    return PlasmaFit(
        omega_p=float(HC_EV_UM * math.sqrt(-slope)),
        eps_inter=float(eps_inter),
        fit_range=(float(lam2.min()), float(lam2.max())),
        residual_rms=rms,
        eps_inter_was_fitted=eps_inter_fixed is None,
        n_points=int(lam2.size),
    )


def interband_constant(data: OpticalDataset, omega_inter: float, quad: Optional[QuadratureConfig] = None) -> float:
    """(2/pi) int_{omega_inter}^inf eps''(omega) / omega from the data plus power-law tail."""
    if not omega_inter < data.omega_max:
        raise ValueError(f"data end at {data.omega_max:g} eV/hbar, below omega_inter={omega_inter:g}")
    body, tail = inverse_moment_parts(data, omega_inter, quad)
    total = body + tail
    if total > 0 and tail > 0.1 * total:
        warnings.warn(
            f"high-frequency tail supplies {100 * tail / total:.1f}% of eps_inter",
            TailDominanceWarning,
            stacklevel=2,
        )
    return float(total)


@dataclass(frozen=True)
class ConsistencyReport:
    """Interpolated permittivities at probe frequencies and per-dataset plasma fits.

    ``eps`` has shape (n_probes, n_sets), NaN where a probe is outside a set.
    ``pair_diff_pct`` maps (i, j) to 100 |eps_i - eps_j| / |eps_j| per probe.
    ``fits`` holds a PlasmaFit or the error text per set; ``flagged`` lists
    pairs whose plasma frequencies differ by more than 5 %.
    """

    labels: tuple
    probes: np.ndarray
    eps: np.ndarray
    pair_diff_pct: dict
    fits: tuple
    flagged: tuple


def eps_at(data: OpticalDataset, omega):
    """Complex permittivity interpolated at ``omega`` (NaN outside the data)."""
    omega = np.atleast_1d(np.asarray(omega, dtype=float))
    inside = (omega >= data.omega_min) & (omega <= data.omega_max)
    out = np.full(omega.shape, np.nan + 1j * np.nan)
    x = omega[inside]
    e2 = power_law_interp(data.omega, data.eps2, x)
    e1 = 1.0 - power_law_interp(data.omega, 1.0 - data.eps1, x)
    out[inside] = e1 + 1j * e2
    return out


def consistency_report(
    sets: Sequence[OpticalDataset],
    overlap_probe: Sequence[float],
    freq_range: Optional[Tuple[float, float]] = None,
    threshold: float = OMEGA_P_FLAG_THRESHOLD,
) -> ConsistencyReport:
    if len(sets) < 2:
        raise ValueError("a consistency report needs at least two datasets")
    probes = np.asarray(overlap_probe, dtype=float)
    eps = np.stack([eps_at(d, probes) for d in sets], axis=1)
    diffs = {}
    for i, j in itertools.combinations(range(len(sets)), 2):
        diffs[(i, j)] = 100.0 * np.abs(eps[:, i] - eps[:, j]) / np.abs(eps[:, j])
    fits = []
    for d in sets:
        rng = freq_range if freq_range is not None else default_fit_range(d)
        try:
            with warnings.catch_warnings():
                warnings.simplefilter("ignore", FitQualityWarning)
                fits.append(fit_plasma_frequency(d, rng))
        except FitError as exc:
            fits.append(str(exc))
    flagged = []
    for i, j in itertools.combinations(range(len(sets)), 2):
        fi, fj = fits[i], fits[j]
        if isinstance(fi, PlasmaFit) and isinstance(fj, PlasmaFit):
            if abs(fi.omega_p - fj.omega_p) / min(fi.omega_p, fj.omega_p) > threshold:
                flagged.append((i, j))
    labels = tuple(d.label or f"set{i}" for i, d in enumerate(sets))
    return ConsistencyReport(labels, probes, eps, diffs, tuple(fits), tuple(flagged))
