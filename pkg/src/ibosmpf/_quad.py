"""Composite Gauss-Legendre quadrature for band-limited spectral integrals.

The correlation integrals used by the general PSD evaluator and the
frequency-domain cross-check have smooth integrands on the compact overlap
of two spectral supports, oscillating no faster than a known cycle rate
(seconds, i.e. cycles per hertz).  Panels are sized so that each spans at
most ~1.5 oscillation cycles, which keeps a 16-point rule near machine
accuracy.
"""

from __future__ import annotations

from functools import lru_cache
from typing import Callable

import numpy as np


@lru_cache(maxsize=8)
def _gauss_rule(n_points: int) -> tuple[np.ndarray, np.ndarray]:
    x, w = np.polynomial.legendre.leggauss(n_points)
    return x, w


def _unit_panel_rule(n_panels: int, n_points: int) -> tuple[np.ndarray, np.ndarray]:
    """Composite rule on [0, 1]: node positions and weights."""
    x, w = _gauss_rule(n_points)
    edges = np.linspace(0.0, 1.0, n_panels + 1)
    half = 0.5 / n_panels
    centers = edges[:-1] + half
    nodes = (centers[:, None] + half * x[None, :]).ravel()
    weights = np.broadcast_to(half * w[None, :], (n_panels, n_points)).ravel()
    return nodes, weights.copy()


def band_integral(
    w: Callable[[np.ndarray], np.ndarray],
    support: tuple[float, float],
    cycle_rate: float,
    n_points: int = 16,
    min_panels: int = 4,
) -> complex:
    """Integrate a band-limited weight over its support."""
    lo, hi = support
    width = hi - lo
    if width <= 0:
        return 0.0 + 0.0j
    n_panels = int(np.ceil(width * abs(cycle_rate) / 1.5)) + min_panels
    nodes, weights = _unit_panel_rule(n_panels, n_points)
    values = np.asarray(w(lo + width * nodes), dtype=complex)
    return complex(np.dot(values, weights) * width)


def band_correlation(
    w1: Callable[[np.ndarray], np.ndarray],
    w2: Callable[[np.ndarray], np.ndarray],
    support1: tuple[float, float],
    support2: tuple[float, float],
    shifts: np.ndarray,
    cycle_rate: float,
    n_points: int = 16,
    min_panels: int = 4,
) -> np.ndarray:
    """Evaluate ``int w1(v) * w2(v - g) dv`` for every shift g.

    ``w1``/``w2`` must vanish outside their supports; only the overlap is
    integrated.  ``cycle_rate`` bounds the oscillation of the combined
    integrand in cycles per hertz.
    """
    shifts = np.atleast_1d(np.asarray(shifts, dtype=float))
    lo1, hi1 = support1
    lo2, hi2 = support2
    lo = np.maximum(lo1, lo2 + shifts)
    hi = np.minimum(hi1, hi2 + shifts)
    width = np.clip(hi - lo, 0.0, None)

    max_width = float(width.max(initial=0.0))
    if max_width == 0.0:
        return np.zeros(shifts.shape, dtype=complex)

    n_panels = int(np.ceil(max_width * abs(cycle_rate) / 1.5)) + min_panels
    unit_nodes, unit_weights = _unit_panel_rule(n_panels, n_points)

    nodes = lo[:, None] + width[:, None] * unit_nodes[None, :]
    weights = width[:, None] * unit_weights[None, :]
    values = w1(nodes) * w2(nodes - shifts[:, None])
    out = np.einsum("ij,ij->i", np.asarray(values, dtype=complex), weights)
    out[width == 0.0] = 0.0
    return out
