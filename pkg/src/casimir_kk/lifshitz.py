"""Casimir pressure between two identical half-spaces from the Lifshitz formula.

The transverse-momentum integral of every Matsubara term is rewritten with
y = 2 a q_n, which turns it into

    int_{y_n}^inf dy y^2 sum_pol r^2 e^-y / (1 - r^2 e^-y),   y_n = 2 a xi_n / c,

and evaluated with Gauss-Laguerre after shifting y -> y_n + t.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field, replace
from typing import Callable, Optional, Sequence

import numpy as np
from scipy.interpolate import PchipInterpolator

from .constants import HBAR_C_EV_M, K_B_EV_K, K_B_J_K
from .core import ImagAxisResult
from .quadrature import QuadratureConfig, QuadratureWarning, gauss_laguerre

DRUDE = "drude"
GENERALIZED_PLASMA = "generalized-plasma"
_PRESCRIPTIONS = (DRUDE, GENERALIZED_PLASMA)


class MatsubaraConvergenceWarning(RuntimeWarning):
    """The neglected Matsubara terms are not small; raise n_max_factor."""


@dataclass(frozen=True)
class CasimirConfig:
    """Geometry, temperature and numerical controls for one pressure evaluation.

    separation is in metres, temperature in kelvin.  ``plasma_frequency``
    (eV/hbar) is needed only for the generalized-plasma prescription, where
    it fixes the zero-frequency TE reflection.
    """

    separation: float
    temperature: float
    prescription: str = DRUDE
    n_max_factor: float = 10.0
    kperp_quad: QuadratureConfig = field(default_factory=QuadratureConfig)
    plasma_frequency: Optional[float] = None
    matsubara_tol: float = 2e-3

    def __post_init__(self):
        if not self.separation > 0:
            raise ValueError("separation must be positive")
        if not self.temperature > 0:
            raise ValueError("temperature must be positive")
        if self.prescription not in _PRESCRIPTIONS:
            raise ValueError(f"prescription must be one of {_PRESCRIPTIONS}, got {self.prescription!r}")
        if not self.n_max_factor > 0:
            raise ValueError("n_max_factor must be positive")
        if self.prescription == GENERALIZED_PLASMA and not (self.plasma_frequency or 0) > 0:
            raise ValueError("the generalized-plasma prescription needs plasma_frequency")

    @property
    def characteristic_frequency(self) -> float:
        """c / (2a) expressed in eV/hbar."""
        return HBAR_C_EV_M / (2.0 * self.separation)

    @property
    def n_max(self) -> int:
        """Highest Matsubara index kept: xi_n up to n_max_factor * c/(2a), at least one mode."""
        xi1 = 2.0 * math.pi * K_B_EV_K * self.temperature
        return max(1, math.ceil(self.n_max_factor * self.characteristic_frequency / xi1 - 1e-12))


def matsubara_freqs(temperature: float, n_max: int) -> np.ndarray:
    """xi_n = 2 pi n k_B T / hbar in eV/hbar for n = 0 .. n_max."""
    if not temperature > 0:
        raise ValueError("temperature must be positive")
    if n_max < 0:
        raise ValueError("n_max must be non-negative")
    return 2.0 * math.pi * K_B_EV_K * temperature * np.arange(n_max + 1, dtype=float)


def fresnel_imag(eps_ixi, xi, kperp):
    """TE and TM reflection coefficients at imaginary frequency.

    ``xi`` in eV/hbar, ``kperp`` in 1/m.  Returns ``(r_te, r_tm)``.
    """
    eps = np.asarray(eps_ixi, dtype=float)
    xi = np.asarray(xi, dtype=float)
    kperp = np.asarray(kperp, dtype=float)
    if np.any(~(eps >= 1)):
        raise ValueError("eps(i xi) must be >= 1 on the imaginary axis")
    if np.any(xi < 0):
        raise ValueError("xi must be non-negative")
    if np.any((xi == 0) & (kperp <= 0)):
        raise ValueError("kperp must be positive at xi = 0")
    kappa = xi / HBAR_C_EV_M
    q = np.sqrt(kperp**2 + kappa**2)
    return _reflection(eps, kappa, q)


def _reflection(eps, kappa, q):
    diff = (eps - 1.0) * kappa**2
    k = np.sqrt(q * q + diff)
    # q - k written without cancellation
    r_te = -diff / (q + k) ** 2
    r_tm = (eps * q - k) / (eps * q + k)
    return r_te, r_tm


def _mode_integrals(eps, kappa, a, order, te_zero_kappa=None):
    """Polarisation-summed y-integrals for every mode, shape (n_modes,).

    ``kappa`` = xi_n / c in 1/m.  The first entry is n = 0 when ``eps[0]`` is
    ``nan``: then TM reflects perfectly and TE uses ``te_zero_kappa`` (plasma
    wavenumber) or vanishes.
    """
    t, w = gauss_laguerre(order)
    y0 = 2.0 * a * kappa
    y = y0[:, None] + t[None, :]
    q = y / (2.0 * a)
    decay = np.exp(-y)
    r_te, r_tm = _reflection(np.where(np.isnan(eps), 1.0, eps)[:, None], kappa[:, None], q)
    zero = np.isnan(eps)
    if np.any(zero):
        r_tm = np.where(zero[:, None], 1.0, r_tm)
        if te_zero_kappa is None:
            r_te = np.where(zero[:, None], 0.0, r_te)
        else:
            kz = np.sqrt(q * q + te_zero_kappa**2)
            r_te = np.where(zero[:, None], (q - kz) / (q + kz), r_te)
    total = np.zeros(y.shape)
    for r in (r_te, r_tm):
        r2 = r * r
        total += r2 / (1.0 - r2 * decay)
    # e^-t is carried by the Laguerre weights; e^-y0 is restored here
    return np.exp(-y0) * ((y * y * total) @ w)


def _converged_integrals(eps, kappa, a, quad, te_zero_kappa=None):
    order = 32
    prev = _mode_integrals(eps, kappa, a, order, te_zero_kappa)
    while True:
        order *= 2
        cur = _mode_integrals(eps, kappa, a, order, te_zero_kappa)
        err = np.abs(cur - prev).sum()
        if err <= quad.rel_tol * np.abs(cur).sum() or order >= 256:
            if err > quad.rel_tol * np.abs(cur).sum():
                warnings.warn("k-perp quadrature did not reach rel_tol", QuadratureWarning, stacklevel=3)
            return cur
        prev = cur


def pressure_terms(eps_provider: Callable, cfg: CasimirConfig) -> np.ndarray:
    """Per-mode contributions to the pressure in Pa (n = 0 already halved)."""
    a = cfg.separation
    n_max = cfg.n_max
    xi = matsubara_freqs(cfg.temperature, n_max)
    eps = np.empty(n_max + 1)
    eps[0] = np.nan
    eps[1:] = np.asarray(eps_provider(xi[1:]), dtype=float)
    if np.any(~(eps[1:] >= 1)):
        bad = xi[1:][~(eps[1:] >= 1)]
        raise ValueError(f"eps(i xi) < 1 or undefined at xi = {bad[:5]} eV/hbar")
    kappa = xi / HBAR_C_EV_M
    te0 = None
    if cfg.prescription == GENERALIZED_PLASMA:
        te0 = cfg.plasma_frequency / HBAR_C_EV_M
    integrals = _converged_integrals(eps, kappa, a, cfg.kperp_quad, te0)
    integrals[0] *= 0.5
    prefactor = -K_B_J_K * cfg.temperature / math.pi / (2.0 * a) ** 3
    return prefactor * integrals


def pressure(eps_provider: Callable, cfg: CasimirConfig) -> float:
    """Casimir pressure in Pa; negative means attraction.

    ``eps_provider`` maps an array of imaginary frequencies (eV/hbar) to
    eps(i xi).  Modes are summed in ascending order.
    """
    terms = pressure_terms(eps_provider, cfg)
    total = float(np.sum(terms))
    tail = _tail_estimate(terms)
    if tail > cfg.matsubara_tol * abs(total):
        warnings.warn(
            f"Matsubara sum truncated at n={terms.size - 1} leaves an estimated "
            f"{tail / abs(total):.2e} relative tail; increase n_max_factor",
            MatsubaraConvergenceWarning,
            stacklevel=2,
        )
    return total


def _tail_estimate(terms):
    if terms.size < 3:
        return 0.0
    last, before = abs(terms[-1]), abs(terms[-2])
    if before == 0 or last == 0:
        return 0.0
    ratio = last / before
    if ratio >= 1:
        return math.inf
    return last * ratio / (1.0 - ratio)


def pressure_curve(eps_provider: Callable, cfg: CasimirConfig, separations: Sequence[float]) -> np.ndarray:
    return np.array([pressure(eps_provider, replace(cfg, separation=float(a))) for a in separations])


def constant_provider(value: float):
    """Provider returning the same eps(i xi) at every frequency (ideal-metal limit for huge values)."""
    return lambda xi: np.full(np.shape(xi), float(value))


def provider_from_result(result: ImagAxisResult, use_cut: bool = True):
    """Monotone cubic interpolation of log(eps - 1) against log(xi).

    Frequencies outside the computed grid raise ``ValueError``; the grid
    must cover every Matsubara frequency the pressure needs.
    """
    xi = result.xi_grid
    eps = result.eps_total if use_cut else 1.0 + result.eps_expt
    good = np.isfinite(eps) & (eps > 1)
    if np.count_nonzero(good) < 2:
        raise ValueError("need at least two grid points with eps > 1")
    xg, eg = xi[good], eps[good]
    interp = PchipInterpolator(np.log(xg), np.log(eg - 1.0), extrapolate=False)
    lo, hi = xg[0], xg[-1]

    def provider(x):
        x = np.asarray(x, dtype=float)
        if np.any(x < lo * (1 - 1e-12)) or np.any(x > hi * (1 + 1e-12)):
            raise ValueError(
                f"xi range [{x.min():g}, {x.max():g}] not covered by the dispersion grid [{lo:g}, {hi:g}]"
            )
        return 1.0 + np.exp(interp(np.log(np.clip(x, lo, hi))))

    return provider


def matsubara_grid(cfg: CasimirConfig) -> np.ndarray:
    """Positive Matsubara frequencies needed by ``cfg``."""
    return matsubara_freqs(cfg.temperature, cfg.n_max)[1:]


def pressure_diff_report(
    res_a: ImagAxisResult, res_b: ImagAxisResult, cfg: CasimirConfig, separations: Sequence[float]
):
    """Rows ``(a, 100 (P_a - P_b) / P_b)`` for each separation."""
    pa = pressure_curve(provider_from_result(res_a), cfg, separations)
    pb = pressure_curve(provider_from_result(res_b), cfg, separations)
    return [(float(a), float(100.0 * (x - y) / y)) for a, x, y in zip(separations, pa, pb)]
