"""General intensity-PSD evaluator for arbitrary two-arm modulation pairs.

The detected intensity PSD follows from the Gaussian moment theorem applied
to the two-arm field: sixteen slot assignments of the arms to the four
field factors, each pairing a product of shifted source autocorrelations
with a time average of four modulation factors.  The modulation averages
are expanded generically over the Fourier coefficients of both arms, so any
coefficient pair (and arm amplitude ratio) is supported.

Discrete lines come from the lag-independent parts evaluated directly from
the autocorrelation; the continuum requires transforms of shifted
autocorrelation products, computed here as numeric spectral correlation
integrals (Gauss-Legendre panels over the band overlap).  That numeric
route is deliberately independent of the per-scheme closed forms, which use
the analytic transforms instead; the two are cross-checked in the tests.
"""

from __future__ import annotations

import itertools
import math
from typing import Mapping

import numpy as np

from ._quad import band_correlation
from .config import LinkConfig
from .decomposition import SpectralDecomposition
from .errors import ConfigurationError
from .modulation import build_scheme
from .spectrum import OpticalSpectrum

# Slot assignments (a, b, c, e): which arm feeds each of the four field
# factors E_a*(t) E_b(t+v) E_c*(t+v+u) E_e(t+u).  Arm 1 is undelayed, arm 2
# is delayed by d and carries exp(-j * carrier_phase).
_SLOT_ASSIGNMENTS = tuple(itertools.product((1, 2), repeat=4))


def _term_geometry(slots: tuple[int, int, int, int]) -> tuple[int, int, int, int, int]:
    """Shift multipliers (va, vb, ua, ub) in units of d, and phase count n."""
    a, b, c, e = slots
    da, db, dc, de = (int(i == 2) for i in slots)
    va = da - db
    vb = de - dc
    ua = da - de
    ub = db - dc
    n = da + dc - db - de
    return va, vb, ua, ub, n


def _modulation_tables(
    m1: Mapping[int, complex], m2: Mapping[int, complex]
) -> dict[tuple[int, int, int, int], dict[tuple[int, int], complex]]:
    """Harmonic tables {(k_v, k_u): coeff} of the four-factor time averages."""
    arms = {1: m1, 2: m2}
    tables = {}
    for slots in _SLOT_ASSIGNMENTS:
        ma, mb, mc, me = (arms[i] for i in slots)
        table: dict[tuple[int, int], complex] = {}
        for p in ma:
            for q in mb:
                for r in mc:
                    s = p - q + r
                    cs = me.get(s)
                    if cs is None:
                        continue
                    coeff = np.conj(ma[p]) * mb[q] * np.conj(mc[r]) * cs
                    if coeff == 0:
                        continue
                    key = (q - r, s - r)
                    table[key] = table.get(key, 0.0 + 0.0j) + coeff
        tables[slots] = table
    return tables


def _spectral_correlation(
    spectrum: OpticalSpectrum, shifts: np.ndarray, lag_offset: float
) -> np.ndarray:
    """int G(v) G(v - g) exp(j 2 pi v lag_offset) dv for each shift g."""
    sup = spectrum.support()
    if lag_offset == 0.0:
        w1 = spectrum.psd
    else:
        def w1(v):
            return spectrum.psd(v) * np.exp(2j * np.pi * v * lag_offset)
    return band_correlation(w1, spectrum.psd, sup, sup, shifts, cycle_rate=abs(lag_offset))


def _arm_modulations(link: LinkConfig):
    m1, m2, k_scheme = build_scheme(link.scheme)
    k_total = complex(k_scheme) * complex(link.interferometer.arm_ratio_k)
    m2_coeffs = {n: k_total * c for n, c in m2.coeffs.items()}
    return dict(m1.coeffs), m2_coeffs, m1.f_m


def general_intensity_psd(link: LinkConfig, f_grid: np.ndarray) -> SpectralDecomposition:
    """Exact line/continuum intensity PSD for any configured scheme.

    The grid must resolve the discrete-line spacing: spacing above half the
    RF fundamental is rejected.
    """
    f_grid = np.asarray(f_grid, dtype=float)
    if f_grid.ndim != 1 or f_grid.size < 2:
        raise ConfigurationError("frequency grid needs at least two points")
    m1c, m2c, f_m = _arm_modulations(link)
    tables = _modulation_tables(m1c, m2c)
    has_sidebands = any(k != (0, 0) for t in tables.values() for k in t)
    if f_m > 0 and has_sidebands:
        max_step = float(np.max(np.diff(f_grid)))
        if max_step > f_m / 2.0:
            raise ConfigurationError(
                "frequency grid too coarse to separate modulation lines: "
                f"step {max_step:.3g} Hz exceeds f_m/2"
            )

    spectrum = link.spectrum
    d = link.delay
    theta0 = link.carrier_phase
    phi = link.phi
    omega = 2.0 * math.pi * f_m

    # continuum: cache the spectral correlations per (lag multiple, k_u)
    v_grid = 2.0 * np.pi * phi * f_grid
    corr_cache: dict[tuple[int, int], np.ndarray] = {}
    continuum = np.zeros(f_grid.shape, dtype=complex)
    line_orders: set[int] = set()
    for slots in _SLOT_ASSIGNMENTS:
        va, vb, ua, ub, n = _term_geometry(slots)
        table = tables[slots]
        if not table:
            continue
        phase = np.exp(1j * n * theta0)
        for (k_v, k_u), coeff in table.items():
            line_orders.add(k_u)
            key = (ua - ub, k_u)
            if key not in corr_cache:
                corr_cache[key] = _spectral_correlation(
                    spectrum, f_grid - k_u * f_m, (ua - ub) * d
                )
            base = (
                np.exp(2j * np.pi * (f_grid - k_u * f_m) * (ub * d)) * corr_cache[key]
            )
            continuum += coeff * phase * np.exp(1j * omega * k_v * v_grid) * base

    imag_peak = float(np.max(np.abs(continuum.imag), initial=0.0))
    real_peak = float(np.max(np.abs(continuum.real), initial=0.0))
    if imag_peak > 1e-9 * max(real_peak, 1e-300):
        raise AssertionError("continuum has a non-negligible imaginary part")

    # lines: lag-independent parts evaluated at v = 2 pi (k_u f_m) phi
    r0 = spectrum.autocorrelation
    line_freqs = []
    line_powers = []
    for k_u in sorted(line_orders):
        f_line = k_u * f_m
        v_line = 2.0 * np.pi * phi * f_line
        weight = 0.0 + 0.0j
        for slots in _SLOT_ASSIGNMENTS:
            va, vb, ua, ub, n = _term_geometry(slots)
            table = tables[slots]
            a_part = r0(v_line + va * d) * np.conj(r0(v_line + vb * d))
            phase = np.exp(1j * n * theta0)
            for (k_v, kk_u), coeff in table.items():
                if kk_u != k_u:
                    continue
                weight += coeff * phase * np.exp(1j * omega * k_v * v_line) * a_part
        if abs(weight.imag) > 1e-9 * max(abs(weight.real), 1e-300):
            raise AssertionError(f"line weight at {f_line} Hz not real: {weight}")
        line_freqs.append(f_line)
        line_powers.append(max(weight.real, 0.0))

    decomp = SpectralDecomposition(
        frequencies=f_grid,
        continuum=continuum.real,
        line_frequencies=np.array(line_freqs),
        line_powers=np.array(line_powers),
        metadata={"path": "general-engine", "f_m": f_m},
    )
    decomp.clamp_continuum()
    return decomp


def fundamental_line_power(link: LinkConfig, f_m: float) -> float:
    """Detected RF power at +-f_m from the general line machinery."""
    base = link.with_modulation_frequency(f_m)
    m1c, m2c, f_m = _arm_modulations(base)
    tables = _modulation_tables(m1c, m2c)
    spectrum = base.spectrum
    d = base.delay
    theta0 = base.carrier_phase
    omega = 2.0 * math.pi * f_m
    r0 = spectrum.autocorrelation
    total = 0.0
    for target in (-1, 1):
        f_line = target * f_m
        v_line = 2.0 * np.pi * base.phi * f_line
        weight = 0.0 + 0.0j
        for slots in _SLOT_ASSIGNMENTS:
            va, vb, ua, ub, n = _term_geometry(slots)
            a_part = r0(v_line + va * d) * np.conj(r0(v_line + vb * d))
            phase = np.exp(1j * n * theta0)
            for (k_v, k_u), coeff in tables[slots].items():
                if k_u != target:
                    continue
                weight += coeff * phase * np.exp(1j * omega * k_v * v_line) * a_part
        total += max(weight.real, 0.0)
    return total
