"""Analytic permittivity models: Drude, plasma, Lorentz oscillators, generalized plasma."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

from .core import Frequency, OpticalDataset, as_frequency_array, nk_from_eps


@dataclass(frozen=True)
class DrudeParams:
    """Plasma frequency and relaxation rate, both in eV/hbar.

    ``gamma == 0`` gives the dissipationless plasma model.
    """

    omega_p: Frequency
    gamma: Frequency

    def __post_init__(self):
        if not self.omega_p > 0:
            raise ValueError(f"omega_p must be positive, got {self.omega_p!r}")
        if not self.gamma >= 0:
            raise ValueError(f"gamma must be non-negative, got {self.gamma!r}")

    def scaled(self, d_omega_p=0.0, d_gamma=0.0) -> "DrudeParams":
        """Relative perturbation, e.g. ``scaled(d_omega_p=0.02)`` for +2 %."""
        return DrudeParams(self.omega_p * (1.0 + d_omega_p), self.gamma * (1.0 + d_gamma))


@dataclass(frozen=True)
class LorentzOscillator:
    """Bound-charge resonance contributing s w0^2 / (w0^2 - w^2 - i w width)."""

    strength: float
    omega_0: Frequency
    width: Frequency

    def __post_init__(self):
        if not self.strength >= 0:
            raise ValueError("oscillator strength must be non-negative")
        if not self.omega_0 > 0:
            raise ValueError("oscillator resonance must be positive")
        if not self.width > 0:
            raise ValueError("oscillator width must be positive")

    def eps_real_axis(self, omega):
        omega = np.asarray(omega, dtype=float)
        w0sq = self.omega_0**2
        return self.strength * w0sq / (w0sq - omega**2 - 1j * omega * self.width)

    def eps_imag_axis(self, xi):
        xi = np.asarray(xi, dtype=float)
        w0sq = self.omega_0**2
        return self.strength * w0sq / (w0sq + xi**2 + xi * self.width)


def drude_eps_real_axis(p: DrudeParams, omega):
    """1 - wp^2 / (w (w + i gamma)) on the real frequency axis."""
    omega = np.asarray(omega, dtype=float)
    if np.any(omega <= 0):
        raise ValueError("the Drude permittivity has a pole at omega = 0")
    if p.gamma <= 0:
        raise ValueError("real-axis Drude evaluation needs gamma > 0; use plasma_eps_real_axis")
    eps = 1.0 - p.omega_p**2 / (omega * (omega + 1j * p.gamma))
    return eps[()] if eps.ndim == 0 else eps


def plasma_eps_real_axis(omega_p: Frequency, omega):
    omega = np.asarray(omega, dtype=float)
    if np.any(omega <= 0):
        raise ValueError("the plasma permittivity has a pole at omega = 0")
    eps = 1.0 - omega_p**2 / omega**2
    return eps[()] if eps.ndim == 0 else eps


def drude_eps_imag_axis(p: DrudeParams, xi):
    """1 + wp^2 / (xi (xi + gamma)); reduces to the plasma model for gamma = 0."""
    xi = np.asarray(xi, dtype=float)
    if np.any(xi <= 0):
        raise ValueError("eps(i xi) of a conductor diverges at xi = 0")
    eps = 1.0 + p.omega_p**2 / (xi * (xi + p.gamma))
    return eps[()] if eps.ndim == 0 else eps


def drude_loss(p: DrudeParams, omega):
    """Im eps_Drude(omega) = wp^2 gamma / (omega (omega^2 + gamma^2))."""
    omega = np.asarray(omega, dtype=float)
    return p.omega_p**2 * p.gamma / (omega * (omega**2 + p.gamma**2))


def drude_one_minus_real(p: DrudeParams, omega):
    """1 - Re eps_Drude(omega) = wp^2 / (omega^2 + gamma^2)."""
    omega = np.asarray(omega, dtype=float)
    return p.omega_p**2 / (omega**2 + p.gamma**2)


def model_eps_real_axis(p: DrudeParams, oscillators: Sequence[LorentzOscillator], omega):
    eps = np.asarray(drude_eps_real_axis(p, omega), dtype=complex)
    for osc in oscillators:
        eps = eps + osc.eps_real_axis(omega)
    return eps


def model_eps_imag_axis(p: DrudeParams, oscillators: Sequence[LorentzOscillator], xi):
    eps = np.asarray(drude_eps_imag_axis(p, xi), dtype=float)
    for osc in oscillators:
        eps = eps + osc.eps_imag_axis(xi)
    return eps


def synthetic_dataset(p: DrudeParams, oscillators: Sequence[LorentzOscillator], grid, label="synthetic"):
    """Tabulate a Drude + Lorentz model as (n, k) on ``grid``.

    The result is Kramers-Kronig consistent by construction, which makes it
    the reference input for every oracle test.
    """
    grid = as_frequency_array(grid, name="grid")
    eps = model_eps_real_axis(p, oscillators, grid)
    n, k = nk_from_eps(eps)
    osc_txt = ";".join(f"({o.strength},{o.omega_0},{o.width})" for o in oscillators)
    meta = f"drude(omega_p={p.omega_p},gamma={p.gamma}) oscillators=[{osc_txt}]"
    return OpticalDataset(grid, n, k, label=label, source_meta=meta)


GOLD_DRUDE = DrudeParams(omega_p=9.0, gamma=0.035)

# Two broad resonances standing in for the interband absorption of gold.
# Fixture values only: they give eps' < 1 below ~3 eV and a static interband
# contribution of about 5.5, not a fit to measured data.
GOLD_INTERBAND = (
    LorentzOscillator(strength=1.0, omega_0=2.7, width=0.6),
    LorentzOscillator(strength=4.5, omega_0=5.0, width=3.0),
)

PRESETS = {
    "drude-gold": (GOLD_DRUDE, ()),
    "drude-lorentz-gold": (GOLD_DRUDE, GOLD_INTERBAND),
}


def preset(name: str):
    """Return ``(DrudeParams, oscillators)`` for a named preset."""
    try:
        return PRESETS[name]
    except KeyError:
        raise KeyError(f"unknown preset {name!r}; known: {', '.join(sorted(PRESETS))}") from None


@dataclass(frozen=True)
class GeneralizedPlasmaSpec:
    """Plasma-model conduction electrons plus tabulated core-electron response.

    ``core_data`` tabulates 1 + chi_core(omega), i.e. its Im(eps) is the
    core absorption eps''_core and Re(eps) - 1 is eps'_core.  It is usually
    restricted to omega >= omega_inter.  ``eps_core_bar`` is the constant
    value of eps'_core below omega_inter; when omitted it is computed from
    the static dispersion integral (2/pi) int eps''_core / omega over the
    core data.
    """

    omega_p: Frequency
    omega_inter: Frequency
    core_data: Optional[OpticalDataset] = None
    eps_core_bar: Optional[float] = None
    quad: object = field(default=None, compare=False)

    def __post_init__(self):
        if not self.omega_p > 0:
            raise ValueError("omega_p must be positive")
        if not self.omega_inter > 0:
            raise ValueError("omega_inter must be positive")
        if self.eps_core_bar is not None and self.eps_core_bar < 0:
            raise ValueError("eps_core_bar must be non-negative")

    def _quad(self):
        from .quadrature import QuadratureConfig

        return self.quad if self.quad is not None else QuadratureConfig()

    def core_bar(self) -> float:
        if self.eps_core_bar is not None:
            return float(self.eps_core_bar)
        if self.core_data is None:
            return 0.0
        from .dispersion import inverse_moment

        return inverse_moment(self.core_data, self.core_data.omega_min, self._quad())


def _gp_needs_core(spec: GeneralizedPlasmaSpec):
    if spec.core_data is None and spec.eps_core_bar:
        raise ValueError("eps_core_bar is set but no core data were given")


def gp_eps_imag_axis_direct(spec: GeneralizedPlasmaSpec, xi):
    """1 + wp^2/xi^2 + (2/pi) int omega eps''_core / (omega^2 + xi^2)."""
    from .dispersion import standard_expt_integral

    xi = as_frequency_array(xi)
    _gp_needs_core(spec)
    eps = 1.0 + spec.omega_p**2 / xi**2
    if spec.core_data is not None:
        eps = eps + standard_expt_integral(spec.core_data, xi, spec._quad())
    return eps


def gp_eps_imag_axis_windowed(spec: GeneralizedPlasmaSpec, xi, b: Frequency):
    """Window form of the generalized plasma permittivity.

    eps'_core is taken constant (``core_bar``) below ``b``, which is only
    legitimate for b < omega_inter; the real-part integral is then done in
    closed form and only core absorption above ``b`` is integrated.
    """
    from .dispersion import sqrt_window_loss_integral

    xi = as_frequency_array(xi)
    if not (0 <= b < spec.omega_inter):
        raise ValueError(f"window parameter b={b} must satisfy 0 <= b < omega_inter={spec.omega_inter}")
    _gp_needs_core(spec)
    if b == 0:
        return gp_eps_imag_axis_direct(spec, xi)
    root = np.sqrt(1.0 + (b / xi) ** 2)
    eps = 1.0 + spec.omega_p**2 / xi**2 + spec.core_bar() * (1.0 - root)
    if spec.core_data is not None:
        eps = eps + sqrt_window_loss_integral(spec.core_data, b, xi, spec._quad())
    return eps


def gp_provider(spec: GeneralizedPlasmaSpec, b: Optional[Frequency] = None):
    """Callable xi -> eps_gp(i xi), direct form or window form with parameter ``b``."""
    if b is None:
        return lambda xi: gp_eps_imag_axis_direct(spec, xi)
    return lambda xi: gp_eps_imag_axis_windowed(spec, xi, b)


