"""Shared data model: frequency grids, tabulated optical data, imaginary-axis results."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import TYPE_CHECKING, Any, Iterable, Optional, Sequence

import numpy as np

if TYPE_CHECKING:
    from .models import DrudeParams

# Frequencies are plain floats in eV/hbar.
Frequency = float

MIN_SAMPLES = 4


class OpticalDataError(ValueError):
    """Invalid optical samples or dataset."""


def _frozen(values, dtype=float) -> np.ndarray:
    arr = np.array(values, dtype=dtype, copy=True)
    arr.setflags(write=False)
    return arr


def make_log_grid(start: Frequency, stop: Frequency, points_per_decade: int) -> np.ndarray:
    """Logarithmically spaced grid from ``start`` to ``stop`` inclusive.

    The number of intervals is ``points_per_decade`` times the number of
    decades, rounded up, so the spacing never exceeds the requested density.
    """
    if not (start > 0 and math.isfinite(start)):
        raise ValueError(f"grid start must be positive, got {start!r}")
    if not (stop > start and math.isfinite(stop)):
        raise ValueError(f"grid stop must exceed start, got start={start!r}, stop={stop!r}")
    if int(points_per_decade) != points_per_decade or points_per_decade < 1:
        raise ValueError(f"points_per_decade must be a positive integer, got {points_per_decade!r}")
    decades = math.log10(stop / start)
    n_int = max(1, math.ceil(points_per_decade * decades - 1e-9))
    exponents = math.log10(start) + decades * np.arange(n_int + 1) / n_int
    grid = 10.0**exponents
    grid[0] = start
    grid[-1] = stop
    grid.setflags(write=False)
    return grid


def eps_from_nk(n, k):
    """Complex permittivity (n + ik)^2 = (n^2 - k^2) + 2ink.

    Works elementwise on arrays.
    """
    n = np.asarray(n, dtype=float)
    k = np.asarray(k, dtype=float)
    if np.any(n <= 0):
        raise OpticalDataError("refraction index n must be positive")
    if np.any(k < 0):
        raise OpticalDataError("extinction coefficient k must be non-negative")
    eps = (n * n - k * k) + 2j * n * k
    return eps[()] if eps.ndim == 0 else eps


def nk_from_eps(eps):
    """Invert ``eps_from_nk`` using the principal square root.

    Passive media have Im(eps) >= 0, which places sqrt(eps) in the first
    quadrant, so n >= 0 and k >= 0.
    """
    eps = np.asarray(eps, dtype=complex)
    if np.any(eps.imag < 0):
        raise OpticalDataError("Im(eps) must be non-negative for a passive medium")
    root = np.sqrt(eps)
    n, k = root.real, np.abs(root.imag)
    if n.ndim == 0:
        return float(n), float(k)
    return n, k


@dataclass(frozen=True)
class OpticalSample:
    omega: Frequency
    n: float
    k: float

    def __post_init__(self):
        if not self.omega > 0:
            raise OpticalDataError(f"sample frequency must be positive, got {self.omega!r}")
        if not self.n > 0:
            raise OpticalDataError(f"n must be positive at omega={self.omega}, got {self.n!r}")
        if not self.k >= 0:
            raise OpticalDataError(f"k must be non-negative at omega={self.omega}, got {self.k!r}")

    @property
    def eps(self) -> complex:
        return complex(eps_from_nk(self.n, self.k))


@dataclass(frozen=True, eq=False)
class OpticalDataset:
    """Tabulated (omega, n, k) samples, strictly increasing in omega.

    Arrays are copied and made read-only on construction.  The permittivity
    is derived on demand from (n, k).
    """

    omega: np.ndarray
    n: np.ndarray
    k: np.ndarray
    label: str = ""
    source_meta: str = ""

    def __post_init__(self):
        omega = _frozen(self.omega)
        n = _frozen(self.n)
        k = _frozen(self.k)
        if not (omega.ndim == n.ndim == k.ndim == 1) or not (omega.size == n.size == k.size):
            raise OpticalDataError("omega, n and k must be 1-D arrays of equal length")
        if omega.size < MIN_SAMPLES:
            raise OpticalDataError(
                f"dataset needs at least {MIN_SAMPLES} samples, got {omega.size}"
            )
        if not np.all(np.isfinite(omega)) or np.any(omega <= 0):
            raise OpticalDataError("frequencies must be finite and positive")
        if np.any(np.diff(omega) <= 0):
            raise OpticalDataError("frequencies must be strictly increasing")
        if not np.all(np.isfinite(n)) or np.any(n <= 0):
            i = int(np.argmax(~(np.isfinite(n) & (n > 0))))
            raise OpticalDataError(f"n must be positive (omega={omega[i]})")
        if not np.all(np.isfinite(k)) or np.any(k < 0):
            i = int(np.argmax(~(np.isfinite(k) & (k >= 0))))
            raise OpticalDataError(f"k must be non-negative (omega={omega[i]})")
        object.__setattr__(self, "omega", omega)
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "k", k)

    @classmethod
    def from_samples(cls, samples: Iterable[OpticalSample], label="", source_meta=""):
        samples = list(samples)
        return cls(
            np.array([s.omega for s in samples], dtype=float),
            np.array([s.n for s in samples], dtype=float),
            np.array([s.k for s in samples], dtype=float),
            label=label,
            source_meta=source_meta,
        )

    @classmethod
    def from_eps(cls, omega, eps, label="", source_meta=""):
        n, k = nk_from_eps(eps)
        return cls(omega, n, k, label=label, source_meta=source_meta)

    def __len__(self):
        return self.omega.size

    @property
    def samples(self) -> tuple:
        return tuple(OpticalSample(float(w), float(n), float(k)) for w, n, k in zip(self.omega, self.n, self.k))

    @property
    def eps(self) -> np.ndarray:
        return (self.n * self.n - self.k * self.k) + 2j * self.n * self.k

    @property
    def eps1(self) -> np.ndarray:
        return self.n * self.n - self.k * self.k

    @property
    def eps2(self) -> np.ndarray:
        return 2.0 * self.n * self.k

    @property
    def omega_min(self) -> float:
        return float(self.omega[0])

    @property
    def omega_max(self) -> float:
        return float(self.omega[-1])

    def with_nk(self, n, k, label=None) -> "OpticalDataset":
        """Same frequency grid with replaced optical constants."""
        return OpticalDataset(
            self.omega, n, k,
            label=self.label if label is None else label,
            source_meta=self.source_meta,
        )

    def restricted(self, lo: Frequency = 0.0, hi: Frequency = math.inf) -> "OpticalDataset":
        keep = (self.omega >= lo) & (self.omega <= hi)
        return OpticalDataset(
            self.omega[keep], self.n[keep], self.k[keep],
            label=self.label, source_meta=self.source_meta,
        )


@dataclass(frozen=True, eq=False)
class ImagAxisResult:
    """eps(i xi) on a grid of imaginary frequencies, split as 1 + cut + expt.

    ``eps_total`` is always computed from the two pieces so the decomposition
    holds exactly.  ``flags`` carries one diagnostic string per grid point
    (empty when the point is clean).
    """

    xi_grid: np.ndarray
    eps_cut: np.ndarray
    eps_expt: np.ndarray
    window: Any = None
    drude_params: Optional["DrudeParams"] = None
    flags: tuple = ()
    eps_total: np.ndarray = field(init=False)

    def __post_init__(self):
        xi = _frozen(self.xi_grid)
        cut = _frozen(self.eps_cut)
        expt = _frozen(self.eps_expt)
        if not (xi.shape == cut.shape == expt.shape) or xi.ndim != 1:
            raise ValueError("xi_grid, eps_cut and eps_expt must be 1-D arrays of equal length")
        flags = tuple(self.flags) if self.flags else ("",) * xi.size
        if len(flags) != xi.size:
            raise ValueError("flags must have one entry per grid point")
        object.__setattr__(self, "xi_grid", xi)
        object.__setattr__(self, "eps_cut", cut)
        object.__setattr__(self, "eps_expt", expt)
        object.__setattr__(self, "flags", flags)
        object.__setattr__(self, "eps_total", _frozen(1.0 + cut + expt))

    def __len__(self):
        return self.xi_grid.size

    def without_cut(self) -> "ImagAxisResult":
        """Copy with the extrapolation piece zeroed (drop-the-cut diagnostic)."""
        return ImagAxisResult(
            self.xi_grid, np.zeros_like(self.eps_cut), self.eps_expt,
            window=self.window, drude_params=self.drude_params, flags=self.flags,
        )


def as_frequency_array(values: Sequence[float] | float, name="xi") -> np.ndarray:
    arr = np.atleast_1d(np.asarray(values, dtype=float))
    if arr.ndim != 1:
        raise ValueError(f"{name} must be one-dimensional")
    if np.any(~np.isfinite(arr)) or np.any(arr <= 0):
        raise ValueError(f"all {name} values must be finite and positive")
    return arr
