"""Monte Carlo propagation of optical-data noise and Drude-parameter sensitivity."""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, replace
from typing import Callable, Optional, Sequence

import numpy as np

from .core import ImagAxisResult, OpticalDataset
from .dispersion import (
    DEFAULT_ZERO_THRESHOLD,
    Identity,
    SqrtWindow,
    WindowedTransform,
    WindowSpec,
    kk_standard,
    kk_windowed,
)
from .lifshitz import CasimirConfig, matsubara_grid, pressure, provider_from_result
from .models import DrudeParams


@dataclass(frozen=True)
class NoiseSpec:
    """Common relative standard deviation ``delta_exp`` on every n and k."""

    delta_exp: float
    n_resamples: int = 1000
    seed: int = 0

    def __post_init__(self):
        if not 0 <= self.delta_exp < 0.5:
            raise ValueError("delta_exp must lie in [0, 0.5)")
        if self.n_resamples < 2:
            raise ValueError("n_resamples must be at least 2")
        if not 0 <= self.seed < 2**64:
            raise ValueError("seed must be a 64-bit unsigned integer")


@dataclass(frozen=True, eq=False)
class UncertaintyResult:
    xi_grid: np.ndarray
    delta_eps_abs: np.ndarray
    delta_eps_rel: np.ndarray
    reference: ImagAxisResult
    reference_kk: ImagAxisResult
    n_negative: np.ndarray
    n_clamped: int
    n_resamples: int


def _rng(seed: int, stream_index: int) -> np.random.Generator:
    # one Philox stream per resample: results do not depend on evaluation order
    ss = np.random.SeedSequence(seed, spawn_key=(int(stream_index),))
    return np.random.Generator(np.random.Philox(ss))


def _draw(data: OpticalDataset, noise: NoiseSpec, stream_index: int):
    z = _rng(noise.seed, stream_index).standard_normal((2, len(data)))
    n = data.n * (1.0 + noise.delta_exp * z[0])
    k = data.k * (1.0 + noise.delta_exp * z[1])
    clamped = int(np.count_nonzero(k < 0)) + int(np.count_nonzero(n <= 0))
    k = np.maximum(k, 0.0)
    # n <= 0 needs a >2 sigma draw at delta_exp < 0.5; keep it physical
    n = np.where(n > 0, n, data.n * 1e-9)
    return n, k, clamped


def resample_dataset(data: OpticalDataset, noise: NoiseSpec, stream_index: int) -> OpticalDataset:
    """Independent Gaussian draws for every n_i and k_i, mean = measured value.

    Standard deviations are ``delta_exp`` times the measured values.  Negative
    k draws are clamped to zero.  ``(noise.seed, stream_index)`` fixes the
    result bit for bit.
    """
    n, k, _ = _draw(data, noise, stream_index)
    return data.with_nk(n, k, label=f"{data.label}#{stream_index}")


def propagate(data: OpticalDataset, noise: NoiseSpec, transform: Callable, threads: int = 1):
    """Apply ``transform`` (dataset -> 1-D array) to every resample.

    Returns ``(samples, n_clamped)`` with ``samples`` of shape
    ``(n_resamples, n_out)`` ordered by resample index.
    """

    def one(alpha):
        n, k, clamped = _draw(data, noise, alpha)
        return np.asarray(transform(data.with_nk(n, k)), dtype=float), clamped

    indices = range(noise.n_resamples)
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            outputs = list(pool.map(one, indices))
    else:
        outputs = [one(a) for a in indices]
    samples = np.stack([o[0] for o in outputs])
    return samples, sum(o[1] for o in outputs)


def spread(samples: np.ndarray, reference: np.ndarray) -> np.ndarray:
    """sqrt( sum_alpha (x_alpha - reference)^2 / (M - 1) ), column-wise."""
    m = samples.shape[0]
    return np.sqrt(np.sum((samples - reference) ** 2, axis=0) / (m - 1))


def mc_uncertainty(
    data: OpticalDataset,
    extrap: Optional[DrudeParams],
    window: WindowSpec,
    xi_grid,
    noise: NoiseSpec,
    quad=None,
    threads: int = 1,
    zero_threshold: float = DEFAULT_ZERO_THRESHOLD,
    on_error: str = "raise",
) -> UncertaintyResult:
    """Spread of eps_expt(i xi) over noisy copies of ``data``.

    The spread is measured about the unperturbed eps_expt and normalised by
    the plain Kramers-Kronig eps(i xi) of the unperturbed data.  Resamples
    giving non-positive eps(i xi) are kept and counted per xi.
    """
    if isinstance(window, SqrtWindow) and window.b == 0:
        window = Identity()
    tr = WindowedTransform(data, extrap, window, xi_grid, quad, zero_threshold, on_error)
    reference = tr(data)
    reference_kk = kk_standard(data, extrap, tr.xi, quad)
    samples, clamped = propagate(data, noise, tr.expt, threads)
    delta = spread(samples, reference.eps_expt)
    totals = 1.0 + reference.eps_cut + samples
    n_negative = np.count_nonzero(totals <= 0, axis=0)
    return UncertaintyResult(
        xi_grid=tr.xi,
        delta_eps_abs=delta,
        delta_eps_rel=delta / reference_kk.eps_total,
        reference=reference,
        reference_kk=reference_kk,
        n_negative=n_negative,
        n_clamped=clamped,
        n_resamples=noise.n_resamples,
    )


@dataclass(frozen=True, eq=False)
class SensitivityTable:
    """Per-xi percent change of eps(i xi) for relative Drude-parameter shifts."""

    xi_grid: np.ndarray
    eps: np.ndarray
    pct_omega_p: np.ndarray
    pct_gamma: np.ndarray


def drude_sensitivity(
    data: OpticalDataset,
    extrap: DrudeParams,
    window: WindowSpec,
    xi_grid,
    d_omega_p: float,
    d_gamma: float,
    quad=None,
) -> SensitivityTable:
    """Recompute eps(i xi) with omega_p -> omega_p (1 + d_omega_p) and, separately,
    gamma -> gamma (1 + d_gamma)."""
    base = kk_windowed(data, extrap, window, xi_grid, quad)
    wp = kk_windowed(data, extrap.scaled(d_omega_p=d_omega_p), window, xi_grid, quad)
    gm = kk_windowed(data, extrap.scaled(d_gamma=d_gamma), window, xi_grid, quad)
    return SensitivityTable(
        xi_grid=base.xi_grid,
        eps=base.eps_total,
        pct_omega_p=100.0 * (wp.eps_total - base.eps_total) / base.eps_total,
        pct_gamma=100.0 * (gm.eps_total - base.eps_total) / base.eps_total,
    )


def cover_grid(cfg: CasimirConfig, separations: Sequence[float]) -> np.ndarray:
    """Matsubara frequencies needed by the smallest separation (a superset for all others)."""
    return matsubara_grid(replace(cfg, separation=float(min(separations))))


def drude_pressure_sensitivity(
    data: OpticalDataset,
    extrap: DrudeParams,
    window: WindowSpec,
    cfg: CasimirConfig,
    separations: Sequence[float],
    d_omega_p: float,
    d_gamma: float,
    quad=None,
):
    """Rows ``(a, pct_omega_p, pct_gamma)``: percent change of the pressure."""
    xi = cover_grid(cfg, separations)
    runs = [
        kk_windowed(data, p, window, xi, quad)
        for p in (extrap, extrap.scaled(d_omega_p=d_omega_p), extrap.scaled(d_gamma=d_gamma))
    ]
    providers = [provider_from_result(r) for r in runs]
    rows = []
    for a in separations:
        c = replace(cfg, separation=float(a))
        p0, p1, p2 = (pressure(f, c) for f in providers)
        rows.append((float(a), 100.0 * (p1 - p0) / p0, 100.0 * (p2 - p0) / p0))
    return rows
