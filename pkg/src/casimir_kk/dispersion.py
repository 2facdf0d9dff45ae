"""Dispersion relations giving eps(i xi) from real-frequency optical data.

Three weight ("window") functions are supported:

* :class:`Identity` - the plain Kramers-Kronig relation, which needs only
  eps''(omega);
* :class:`SqrtWindow` - f(z) = z / sqrt(z^2 - b^2), which uses eps' below
  ``b`` and eps'' above it with two positive kernels;
* :class:`OldRational` - the rational family z^(2p+1) [(z-w)^-(2q+1) +
  (z+w*)^-(2q+1)].  Deprecated; kept to reproduce its error amplification.

Every result is split into an extrapolation piece ``eps_cut`` (the Drude
model below the first data point) and a data piece ``eps_expt`` (tabulated
data plus a power-law tail above the last point).  Between data nodes eps''
and 1 - eps' are interpolated as power laws, and each panel between two nodes
is integrated with Gauss-Legendre in a variable that keeps the integrand
smooth: log(omega) for the plain relation, and omega = b sin y / b cosh y
for the square-root window, which removes its 1/sqrt singularity at b.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from typing import Optional, Union

import numpy as np
from scipy.special import hyp2f1

from .core import ImagAxisResult, OpticalDataset, as_frequency_array
from .models import DrudeParams, drude_loss, drude_one_minus_real
from .quadrature import (
    QuadratureConfig,
    QuadratureWarning,
    adaptive_gauss_legendre,
    panel_rule,
    power_law_interp,
)

DEFAULT_ZERO_THRESHOLD = 1e-2
_BASE_ORDER = 8
_MAX_ORDER = 128


class WindowZeroError(ValueError):
    """The window function (nearly) vanishes at a requested imaginary frequency."""

    def __init__(self, xi_values, window):
        self.xi_values = tuple(float(x) for x in xi_values)
        self.window = window
        listed = ", ".join(f"{x:g}" for x in self.xi_values)
        super().__init__(f"{window_label(window)} is too close to zero at xi = {listed} eV/hbar")


class WindowPoleError(ValueError):
    """Direct evaluation of the square-root window at its branch point omega = b."""


class NegativePermittivityWarning(RuntimeWarning):
    """eps(i xi) came out non-positive, which no causal medium allows."""


class KernelSignWarning(RuntimeWarning):
    """1 - eps'(omega) < 0 somewhere below b, so the window kernel is not positive."""


@dataclass(frozen=True)
class Identity:
    """f(z) = 1: the standard Kramers-Kronig relation."""


@dataclass(frozen=True)
class SqrtWindow:
    """f(z; b) = z / sqrt(z^2 - b^2), b >= 0 in eV/hbar."""

    b: float

    def __post_init__(self):
        if not (self.b >= 0 and math.isfinite(self.b)):
            raise ValueError(f"window parameter b must be finite and >= 0, got {self.b!r}")


@dataclass(frozen=True)
class OldRational:
    """Deprecated rational window; ``w`` must lie in the lower half plane."""

    p: int
    q: int
    w: complex

    def __post_init__(self):
        if int(self.p) != self.p or int(self.q) != self.q or not (0 <= self.p <= self.q):
            raise ValueError(f"need integers 0 <= p <= q, got p={self.p!r}, q={self.q!r}")
        if not complex(self.w).imag < 0:
            raise ValueError(f"w must have a negative imaginary part, got {self.w!r}")
        object.__setattr__(self, "w", complex(self.w))

    def _terms(self, z):
        z = np.asarray(z, dtype=complex)
        m = 2 * self.q + 1
        lead = z ** (2 * self.p + 1)
        return lead * (z - self.w) ** (-m), lead * (z + self.w.conjugate()) ** (-m)


WindowSpec = Union[Identity, SqrtWindow, OldRational]


def window_label(window: WindowSpec) -> str:
    if isinstance(window, Identity):
        return "kk"
    if isinstance(window, SqrtWindow):
        return f"sqrt_b{window.b:g}"
    w = window.w
    return f"old_p{window.p}_q{window.q}_w{w.real:g}{w.imag:+g}i"


def window_eval_complex(window: WindowSpec, z):
    """f(z) for z in the closed upper half plane (branch continuous there)."""
    z = np.asarray(z, dtype=complex)
    if isinstance(window, Identity):
        return np.ones_like(z)
    if isinstance(window, SqrtWindow):
        if window.b == 0:
            return np.ones_like(z)
        # product of principal roots: analytic for Im z > 0, ~ z at infinity
        return z / (np.sqrt(z - window.b) * np.sqrt(z + window.b))
    t1, t2 = window._terms(z)
    return t1 + t2


def window_eval_real(window: WindowSpec, omega):
    """f(omega) on the positive real axis, as the limit from the upper half plane."""
    omega = np.asarray(omega, dtype=float)
    if np.any(omega <= 0):
        raise ValueError("window evaluation needs omega > 0")
    if isinstance(window, SqrtWindow):
        b = window.b
        if b == 0:
            out = np.ones(omega.shape, dtype=complex)
        else:
            if np.any(omega == b):
                raise WindowPoleError(f"f(omega; b) is singular at omega = b = {b}")
            with np.errstate(invalid="ignore", divide="ignore"):
                below = -1j * omega / np.sqrt(np.abs(b * b - omega * omega))
                above = omega / np.sqrt(np.abs(omega * omega - b * b)) + 0j
            out = np.where(omega < b, below, above)
    else:
        out = np.asarray(window_eval_complex(window, omega + 0j))
    return out[()] if out.ndim == 0 else out


def window_zero_ratio(window: WindowSpec, xi):
    """|f(i xi)| relative to the magnitude of its parts.

    For the rational window this is |t1 + t2| / (|t1| + |t2|), which drops to
    zero where the two terms cancel on the imaginary axis.  The other windows
    never vanish there and return 1.
    """
    xi = np.asarray(xi, dtype=float)
    if not isinstance(window, OldRational):
        return np.ones(xi.shape)
    t1, t2 = window._terms(1j * xi)
    return np.abs(t1 + t2) / (np.abs(t1) + np.abs(t2))


def window_eval_imag(window: WindowSpec, xi, zero_threshold=DEFAULT_ZERO_THRESHOLD):
    """f(i xi), real by the reflection symmetry f(-z*) = f(z)*.

    Raises :class:`WindowZeroError` where the rational window nearly
    vanishes (``window_zero_ratio`` below ``zero_threshold``).
    """
    xi = np.asarray(xi, dtype=float)
    if np.any(xi <= 0):
        raise ValueError("window evaluation on the imaginary axis needs xi > 0")
    if isinstance(window, Identity):
        out = np.ones(xi.shape)
    elif isinstance(window, SqrtWindow):
        out = xi / np.sqrt(xi * xi + window.b**2)
    else:
        bad = window_zero_ratio(window, xi) < zero_threshold
        if np.any(bad):
            raise WindowZeroError(np.atleast_1d(xi)[np.atleast_1d(bad)], window)
        out = np.asarray(window_eval_complex(window, 1j * xi)).real
    return out[()] if out.ndim == 0 else out


# ---------------------------------------------------------------------------
# Interpolated data quantities


def _loss(data: OpticalDataset, omega):
    return power_law_interp(data.omega, data.eps2, omega)


def _one_minus_real(data: OpticalDataset, omega):
    return power_law_interp(data.omega, 1.0 - data.eps1, omega)


def _log_panels(edges, order):
    """Nodes in omega and weights in log(omega) for panels between ``edges``."""
    edges = np.asarray(edges, dtype=float)
    u, w = panel_rule(np.log(edges[:-1]), np.log(edges[1:]), order)
    return np.exp(u).ravel(), w.ravel()


def _standard_tail(xi, omega_max, t):
    x2 = (xi / omega_max) ** 2
    return (2.0 / math.pi) * hyp2f1(1.0, 0.5 * t, 1.0 + 0.5 * t, -x2) / t


def _drude_cut_standard(p: DrudeParams, omega_min, xi):
    """(2/pi) int_0^omega_min omega eps''_Dr / (omega^2 + xi^2), closed form."""
    g = p.gamma
    if g == 0:
        return np.zeros_like(xi)
    # partial fractions of 1 / ((w^2 + g^2)(w^2 + xi^2))
    a = np.arctan(omega_min / g) / g
    bterm = np.arctan(omega_min / xi) / xi
    denom = xi * xi - g * g
    close = np.abs(denom) < 1e-8 * g * g
    with np.errstate(invalid="ignore", divide="ignore"):
        val = (a - bterm) / denom
    # xi == gamma: int dw / (w^2 + g^2)^2
    same = (np.arctan(omega_min / g) / g**3 + omega_min / (g * g * (omega_min**2 + g * g))) / 2.0
    val = np.where(close, same, val)
    return (2.0 / math.pi) * p.omega_p**2 * g * val


class _Term:
    """Kernel matrix (n_xi x n_nodes) acting on a data quantity sampled at nodes."""

    def __init__(self, kernel, nodes, quantity):
        self.kernel = kernel
        self.nodes = nodes
        self.quantity = quantity  # "loss" | "one_minus_real"

    def values(self, data):
        if self.quantity == "loss":
            return _loss(data, self.nodes)
        return _one_minus_real(data, self.nodes)

    def apply(self, data):
        v = self.values(data)
        return self.kernel @ v, np.abs(self.kernel) @ np.abs(v)


class WindowedTransform:
    """Quadrature plan for one data grid, window, extrapolation and xi grid.

    The plan depends on the data only through its frequency grid, so it can
    be built once and re-applied to resampled (n, k) values on the same grid,
    which is what the Monte Carlo driver does.  The Gauss-Legendre order per
    panel is doubled from 8 until two successive orders agree to
    ``quad.rel_tol`` on the reference data.
    """

    def __init__(
        self,
        data: OpticalDataset,
        extrap: Optional[DrudeParams],
        window: WindowSpec,
        xi_grid,
        quad: Optional[QuadratureConfig] = None,
        zero_threshold: float = DEFAULT_ZERO_THRESHOLD,
        on_error: str = "raise",
    ):
        if on_error not in ("raise", "record"):
            raise ValueError("on_error must be 'raise' or 'record'")
        self.omega = data.omega
        self.extrap = extrap
        self.window = window
        self.xi = as_frequency_array(xi_grid)
        self.quad = quad if quad is not None else QuadratureConfig()
        self.flags = [""] * self.xi.size
        self.valid = np.ones(self.xi.size, dtype=bool)

        if isinstance(window, SqrtWindow) and window.b >= data.omega_max:
            raise ValueError(
                f"window parameter b={window.b} must lie below the last data point {data.omega_max}"
            )
        if isinstance(window, OldRational):
            bad = window_zero_ratio(window, self.xi) < zero_threshold
            if np.any(bad):
                if on_error == "raise":
                    raise WindowZeroError(self.xi[bad], window)
                self.valid = ~bad
                for i in np.flatnonzero(bad):
                    self.flags[i] = "window zero"
        self._xi = self.xi[self.valid]
        self.cut = np.full(self.xi.size, np.nan)
        self.cut[self.valid] = self._cut()
        self._select_order(data)

    # -- plan construction ---------------------------------------------------

    @property
    def _kind(self):
        w = self.window
        if isinstance(w, Identity) or (isinstance(w, SqrtWindow) and w.b == 0):
            return "standard"
        return "sqrt" if isinstance(w, SqrtWindow) else "generic"

    def _build(self, order):
        kind = self._kind
        if kind == "standard":
            return self._build_standard(order)
        if kind == "sqrt":
            return self._build_sqrt(order)
        return self._build_generic(order)

    def _build_standard(self, order):
        xi = self._xi[:, None]
        nodes, w = _log_panels(self.omega, order)
        kernel = (2.0 / math.pi) * w * nodes**2 / (nodes**2 + xi**2)
        tail = _standard_tail(self._xi, self.omega[-1], self.quad.tail_exponent)
        return [_Term(kernel, nodes, "loss")], [(tail, "loss_max")]

    def _sqrt_prefactor(self):
        return (2.0 / math.pi) * np.sqrt(1.0 + (self.window.b / self._xi) ** 2)

    def _build_sqrt(self, order):
        b = self.window.b
        om = self.omega
        pref = self._sqrt_prefactor()[:, None]
        r2 = (self._xi[:, None] / b) ** 2
        terms = []
        if b > om[0]:
            below = om[om < b]
            edges = np.concatenate([np.arcsin(below / b), [0.5 * math.pi]])
            y, w = panel_rule(edges[:-1], edges[1:], order)
            y, w = y.ravel(), w.ravel()
            s2 = np.sin(y) ** 2
            kernel = pref * w * s2 / (s2 + r2)
            terms.append(_Term(kernel, b * np.sin(y), "one_minus_real"))
        start = max(b, om[0])
        above = om[om > start]
        edges = np.concatenate([[np.arccosh(start / b)], np.arccosh(above / b)])
        y, w = panel_rule(edges[:-1], edges[1:], order)
        y, w = y.ravel(), w.ravel()
        c2 = np.cosh(y) ** 2
        kernel = pref * w * c2 / (c2 + r2)
        terms.append(_Term(kernel, b * np.cosh(y), "loss"))
        tail = self._sqrt_prefactor() * _sqrt_tail(self._xi, b, om[-1], self.quad)
        return terms, [(tail, "loss_max")]

    def _build_generic(self, order):
        xi = self._xi[:, None]
        fi = np.asarray(window_eval_complex(self.window, 1j * self._xi)).real[:, None]
        nodes, w = _log_panels(self.omega, order)
        f = window_eval_real(self.window, nodes)
        base = (2.0 / (math.pi * fi)) * w * nodes**2 / (nodes**2 + xi**2)
        terms = [
            _Term(base * f.real, nodes, "loss"),
            _Term(-base * f.imag, nodes, "one_minus_real"),
        ]
        t_loss, t_real = _generic_tails(self.window, self._xi, self.omega[-1], self.quad)
        return terms, [(t_loss, "loss_max"), (t_real, "real_max_minus_one")]

    def _cut(self):
        p = self.extrap
        xi = self._xi
        if p is None or xi.size == 0:
            return np.zeros(xi.size)
        om_min = float(self.omega[0])
        kind = self._kind
        if kind == "standard":
            return _drude_cut_standard(p, om_min, xi)
        tol = self.quad.rel_tol * 0.1
        depth = self.quad.subdiv_limit
        out = np.empty(xi.size)
        if kind == "sqrt":
            b = self.window.b
            y_sin = math.asin(min(om_min, b) / b)
            y_cosh = math.acosh(om_min / b) if b < om_min else 0.0
            pref = self._sqrt_prefactor()
            for i, x in enumerate(xi):
                r2 = (x / b) ** 2

                def f_sin(y, r2=r2):
                    s2 = np.sin(y) ** 2
                    return s2 / (s2 + r2) * drude_one_minus_real(p, b * np.sin(y))

                def f_cosh(y, r2=r2):
                    c2 = np.cosh(y) ** 2
                    return c2 / (c2 + r2) * drude_loss(p, b * np.cosh(y))

                val = adaptive_gauss_legendre(f_sin, 0.0, y_sin, tol, max_depth=depth)
                if y_cosh > 0:
                    val += adaptive_gauss_legendre(f_cosh, 0.0, y_cosh, tol, max_depth=depth)
                out[i] = pref[i] * val
            return out
        from .models import drude_eps_real_axis

        fi = np.asarray(window_eval_complex(self.window, 1j * xi)).real
        for i, x in enumerate(xi):

            def f_gen(om, x=x):
                f = window_eval_complex(self.window, om + 0j)
                return om / (om * om + x * x) * np.imag(f * (drude_eps_real_axis(p, om) - 1.0))

            # integrate in log(omega) to resolve the gamma scale
            def f_log(u):
                om = np.exp(u)
                return om * f_gen(om)

            lo = math.log(min(p.gamma, om_min) * 1e-6) if p.gamma > 0 else math.log(om_min * 1e-8)
            out[i] = 2.0 / (math.pi * fi[i]) * adaptive_gauss_legendre(
                f_log, lo, math.log(om_min), tol, max_depth=depth
            )
        return out

    def _evaluate_plan(self, plan, data):
        terms, tails = plan
        expt = np.zeros(self._xi.size)
        scale = np.zeros(self._xi.size)
        for term in terms:
            val, mag = term.apply(data)
            expt += val
            scale += mag
        scalars = {
            "loss_max": data.eps2[-1],
            "real_max_minus_one": data.eps1[-1] - 1.0,
        }
        for coef, key in tails:
            expt += coef * scalars[key]
            scale += np.abs(coef * scalars[key])
        return expt, scale

    def _select_order(self, data):
        order = _BASE_ORDER
        plan = self._build(order)
        prev, _ = self._evaluate_plan(plan, data)
        doublings = 0
        while True:
            nxt_plan = self._build(2 * order)
            nxt, scale = self._evaluate_plan(nxt_plan, data)
            err = np.abs(nxt - prev)
            tol = self.quad.rel_tol * np.maximum(scale, np.abs(self.cut[self.valid]))
            doublings += 1
            if np.all(err <= tol) or 2 * order >= _MAX_ORDER or doublings >= self.quad.subdiv_limit:
                if not np.all(err <= tol):
                    warnings.warn(
                        f"panel quadrature reached order {2 * order} without meeting rel_tol",
                        QuadratureWarning,
                        stacklevel=3,
                    )
                self.order = 2 * order
                self._plan = nxt_plan
                return
            order *= 2
            prev = nxt

    # -- evaluation -------------------------------------------------------------

    def _check_grid(self, data):
        if data.omega.shape != self.omega.shape or not np.array_equal(data.omega, self.omega):
            raise ValueError("dataset frequency grid differs from the one the transform was built for")

    def expt(self, data: OpticalDataset) -> np.ndarray:
        """Data piece of eps(i xi) on the plan's xi grid (NaN at flagged points)."""
        self._check_grid(data)
        out = np.full(self.xi.size, np.nan)
        out[self.valid], _ = self._evaluate_plan(self._plan, data)
        return out

    def kernel_is_positive(self, data: OpticalDataset) -> bool:
        """True when every quadrature integrand value is non-negative."""
        self._check_grid(data)
        for term in self._plan[0]:
            vals = term.values(data)
            if np.any(term.kernel < 0) and self._kind != "generic":
                return False
            if np.any(vals < 0):
                return False
        return True

    def __call__(self, data: OpticalDataset, check_sign: bool = True) -> ImagAxisResult:
        expt = self.expt(data)
        flags = list(self.flags)
        if check_sign and self._kind == "sqrt" and not self.kernel_is_positive(data):
            warnings.warn(
                f"eps' >= 1 somewhere below b={self.window.b}: the window kernel is not positive",
                KernelSignWarning,
                stacklevel=2,
            )
        total = 1.0 + self.cut + expt
        negative = np.isfinite(total) & (total <= 0)
        for i in np.flatnonzero(negative):
            flags[i] = "negative eps"
        if np.any(negative):
            listed = ", ".join(f"{x:g}" for x in self.xi[negative])
            warnings.warn(
                f"non-positive eps(i xi) at xi = {listed} with {window_label(self.window)}",
                NegativePermittivityWarning,
                stacklevel=2,
            )
        return ImagAxisResult(
            self.xi, self.cut, expt, window=self.window, drude_params=self.extrap, flags=flags
        )


def _sqrt_tail(xi, b, omega_max, quad):
    """int_{omega_max}^inf omega^2/(omega^2+xi^2) (omega_max/omega)^t / sqrt(omega^2-b^2)."""
    t = quad.tail_exponent
    beta2 = (b / omega_max) ** 2
    out = np.empty(xi.size)
    for i, x in enumerate(xi):
        x2 = (x / omega_max) ** 2

        def f(u, x2=x2):
            return u ** (t - 1.0) / ((1.0 + x2 * u * u) * np.sqrt(1.0 - beta2 * u * u))

        out[i] = adaptive_gauss_legendre(f, 0.0, 1.0, quad.rel_tol * 0.1, max_depth=quad.subdiv_limit)
    return out


def _generic_tails(window, xi, omega_max, quad):
    """Tail coefficients multiplying eps''(omega_max) and eps'(omega_max) - 1.

    Above the data eps'' falls as omega^-t and eps' - 1 as omega^-2.
    """
    t = quad.tail_exponent
    fi = np.asarray(window_eval_complex(window, 1j * xi)).real
    t_loss = np.empty(xi.size)
    t_real = np.empty(xi.size)
    for i, x in enumerate(xi):

        def parts(u, x=x):
            om = omega_max / u
            f = window_eval_complex(window, om + 0j)
            jac = om / (om * om + x * x) * omega_max / (u * u)
            return jac, f

        def g_loss(u):
            jac, f = parts(u)
            return jac * f.real * u**t

        def g_real(u):
            jac, f = parts(u)
            return jac * f.imag * u**2

        tol = quad.rel_tol * 0.1
        scale = 2.0 / (math.pi * fi[i])
        t_loss[i] = scale * adaptive_gauss_legendre(g_loss, 0.0, 1.0, tol, max_depth=quad.subdiv_limit)
        t_real[i] = scale * adaptive_gauss_legendre(g_real, 0.0, 1.0, tol, max_depth=quad.subdiv_limit)
    return t_loss, t_real


# ---------------------------------------------------------------------------
# Public transforms


def kk_standard(data: OpticalDataset, extrap: Optional[DrudeParams], xi_grid, quad=None) -> ImagAxisResult:
    """Plain Kramers-Kronig eps(i xi) with Drude extrapolation below the data.

    ``extrap=None`` drops the extrapolation entirely (eps_cut = 0).
    """
    return WindowedTransform(data, extrap, Identity(), xi_grid, quad)(data)


def kk_windowed(
    data: OpticalDataset,
    extrap: Optional[DrudeParams],
    window: WindowSpec,
    xi_grid,
    quad=None,
    zero_threshold=DEFAULT_ZERO_THRESHOLD,
    on_error="raise",
) -> ImagAxisResult:
    """Weighted dispersion relation for any supported window.

    With ``on_error="record"`` imaginary frequencies at which the rational
    window vanishes are returned as NaN with a ``"window zero"`` flag instead
    of raising :class:`WindowZeroError`.
    """
    if isinstance(window, SqrtWindow) and window.b == 0:
        return kk_standard(data, extrap, xi_grid, quad)
    tr = WindowedTransform(data, extrap, window, xi_grid, quad, zero_threshold, on_error)
    return tr(data)


def cut_fraction(result: ImagAxisResult, clamp: bool = False) -> np.ndarray:
    """eps_cut / eps_total per grid point; ``clamp`` limits it to [0, 1] for reporting."""
    with np.errstate(invalid="ignore", divide="ignore"):
        frac = result.eps_cut / result.eps_total
    return np.clip(frac, 0.0, 1.0) if clamp else frac


def g_diagnostic(data: OpticalDataset, window: WindowSpec, xi: float, zero_threshold=DEFAULT_ZERO_THRESHOLD):
    """Integrand of the weighted relation at the data nodes for one xi.

    Returns ``(omega, g)``; its integral over omega gives eps(i xi) - 1.
    Nodes that coincide with the square-root branch point give NaN.
    """
    if not xi > 0:
        raise ValueError("xi must be positive")
    fi = float(window_eval_imag(window, xi, zero_threshold))
    om = data.omega
    f = np.empty(om.size, dtype=complex)
    at_pole = isinstance(window, SqrtWindow) and window.b > 0
    pole = at_pole & (om == getattr(window, "b", -1.0))
    f[~pole] = window_eval_real(window, om[~pole])
    f[pole] = np.nan
    g = 2.0 / (math.pi * fi) * om / (om * om + xi * xi) * np.imag(f * (data.eps - 1.0))
    return om.copy(), g


def standard_expt_integral(data: OpticalDataset, xi, quad=None) -> np.ndarray:
    """(2/pi) int omega eps''/(omega^2 + xi^2) over the data range plus tail."""
    return WindowedTransform(data, None, Identity(), xi, quad).expt(data)


def sqrt_window_loss_integral(data: OpticalDataset, b: float, xi, quad=None) -> np.ndarray:
    """Absorption part of the square-root-window relation, including its prefactor.

    (2/pi) sqrt(1 + b^2/xi^2) int_b^inf omega^2/(omega^2+xi^2) eps''/sqrt(omega^2-b^2),
    with eps'' taken as zero below the first data point.
    """
    if not 0 < b < data.omega_max:
        raise ValueError("need 0 < b < last data frequency")
    tr = WindowedTransform(data, None, SqrtWindow(b), xi, quad)
    terms, tails = tr._plan
    out = np.zeros(tr.xi.size)
    for term in terms:
        if term.quantity == "loss":
            out += term.apply(data)[0]
    for coef, _ in tails:
        out += coef * data.eps2[-1]
    return out


def inverse_moment(data: OpticalDataset, lower: float, quad=None) -> float:
    """(2/pi) int_lower^inf eps''(omega) / omega, from the data plus power-law tail."""
    quad = quad if quad is not None else QuadratureConfig()
    return sum(inverse_moment_parts(data, lower, quad))


def inverse_moment_parts(data: OpticalDataset, lower: float, quad=None):
    """``(data_part, tail_part)`` of :func:`inverse_moment`."""
    quad = quad if quad is not None else QuadratureConfig()
    t = quad.tail_exponent
    tail = (2.0 / math.pi) * data.eps2[-1] / t
    if lower >= data.omega_max:
        om_max = data.omega_max
        return 0.0, tail * (om_max / lower) ** t
    start = max(lower, data.omega_min)
    edges = np.concatenate([[start], data.omega[data.omega > start]])
    prev = None
    order = _BASE_ORDER
    while True:
        nodes, w = _log_panels(edges, order)
        val = (2.0 / math.pi) * float(np.dot(w, _loss(data, nodes)))
        if prev is not None and (abs(val - prev) <= quad.rel_tol * abs(val) or order >= _MAX_ORDER):
            return val, float(tail)
        prev = val
        order *= 2
