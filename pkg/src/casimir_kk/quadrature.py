"""Gauss-Legendre / Gauss-Laguerre machinery and interpolation of tabulated data."""

from __future__ import annotations

import functools
import warnings
from dataclasses import dataclass

import numpy as np


class QuadratureWarning(RuntimeWarning):
    """Requested tolerance not reached within the subdivision budget."""


@dataclass(frozen=True)
class QuadratureConfig:
    """Tolerances and tail model shared by every dispersion integral.

    rel_tol:
        Target relative accuracy of each integral.
    subdiv_limit:
        Maximum bisection depth (adaptive integrals) or order doublings
        (panel integrals).
    tail_exponent:
        eps''(omega) is continued above the last data point as
        eps''(omega_max) * (omega_max / omega) ** tail_exponent.
    interp:
        Interpolation between data nodes; only ``"loglog"`` is supported.
    """

    rel_tol: float = 1e-6
    subdiv_limit: int = 50
    tail_exponent: float = 3.0
    interp: str = "loglog"

    def __post_init__(self):
        if not self.rel_tol > 0:
            raise ValueError("rel_tol must be positive")
        if not self.tail_exponent > 1:
            raise ValueError("tail_exponent must exceed 1 for the tail integral to converge")
        if self.subdiv_limit < 1:
            raise ValueError("subdiv_limit must be at least 1")
        if self.interp != "loglog":
            raise ValueError(f"unsupported interpolation {self.interp!r}")


@functools.lru_cache(maxsize=None)
def gauss_legendre(order: int):
    x, w = np.polynomial.legendre.leggauss(order)
    x.setflags(write=False)
    w.setflags(write=False)
    return x, w


@functools.lru_cache(maxsize=None)
def gauss_laguerre(order: int):
    x, w = np.polynomial.laguerre.laggauss(order)
    x.setflags(write=False)
    w.setflags(write=False)
    return x, w


def _gl_rule(f, a, b, order):
    x, w = gauss_legendre(order)
    half = 0.5 * (b - a)
    mid = 0.5 * (b + a)
    return half * np.dot(w, f(mid + half * x))


def adaptive_gauss_legendre(f, a, b, rel_tol=1e-6, abs_tol=0.0, order=10, max_depth=50):
    """Integrate a vectorised scalar function over [a, b] by bisection.

    Each interval is accepted when the order-``order`` rule agrees with the
    sum over its two halves.  The global budget is split between intervals
    in proportion to their length.
    """
    if b == a:
        return 0.0
    total_len = abs(b - a)
    stack = [(a, b, _gl_rule(f, a, b, order), 0)]
    result = 0.0
    ref = abs(stack[0][2])
    warned = False
    while stack:
        lo, hi, whole, depth = stack.pop()
        mid = 0.5 * (lo + hi)
        left = _gl_rule(f, lo, mid, order)
        right = _gl_rule(f, mid, hi, order)
        halves = left + right
        ref = max(ref, abs(halves))
        budget = max(rel_tol * ref, abs_tol) * abs(hi - lo) / total_len
        if abs(halves - whole) <= budget or depth >= max_depth:
            if depth >= max_depth and not warned and abs(halves - whole) > budget:
                warnings.warn(
                    f"adaptive quadrature on [{a}, {b}] hit depth {max_depth}",
                    QuadratureWarning,
                    stacklevel=2,
                )
                warned = True
            result += halves
        else:
            stack.append((mid, hi, right, depth + 1))
            stack.append((lo, mid, left, depth + 1))
    return float(result)


def panel_rule(lo, hi, order):
    """Gauss-Legendre nodes and weights on many panels at once.

    Returns ``(x, w)`` with shape ``(n_panels, order)``.
    """
    lo = np.asarray(lo, dtype=float)[:, None]
    hi = np.asarray(hi, dtype=float)[:, None]
    x, w = gauss_legendre(order)
    half = 0.5 * (hi - lo)
    return 0.5 * (hi + lo) + half * x, half * w


def power_law_interp(nodes, values, x):
    """Piecewise power-law (log-log linear) interpolation.

    Segments whose two end values are not both positive fall back to
    linear interpolation in log(omega), so zeros and sign changes are
    handled.  ``x`` must lie inside [nodes[0], nodes[-1]].
    """
    nodes = np.asarray(nodes, dtype=float)
    values = np.asarray(values, dtype=float)
    x = np.asarray(x, dtype=float)
    idx = np.clip(np.searchsorted(nodes, x, side="right") - 1, 0, nodes.size - 2)
    x0 = nodes[idx]
    x1 = nodes[idx + 1]
    v0 = values[idx]
    v1 = values[idx + 1]
    t = np.log(x / x0) / np.log(x1 / x0)
    positive = (v0 > 0) & (v1 > 0)
    with np.errstate(divide="ignore", invalid="ignore"):
        loglog = v0 * np.exp(t * np.log(np.where(positive, v1 / v0, 1.0)))
    linear = v0 + t * (v1 - v0)
    return np.where(positive, loglog, linear)
