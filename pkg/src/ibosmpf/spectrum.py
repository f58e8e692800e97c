"""Baseband optical power-spectrum models for incoherent broadband light.

The source field is a stationary circular complex Gaussian process whose
double-sided baseband PSD G(f) [W/Hz] fully determines its statistics.  Two
models are provided: an ideal rectangular slice (closed forms throughout)
and a tabulated PSD interpreted as a piecewise-linear density with zero
extension (transforms evaluated exactly for that interpolant).

Conventions
-----------
autocorrelation:        R0(u)   = int G(f) exp(+j 2 pi f u) df
intensity_autoconvolution: S0(f) = int G(v) G(v - f) dv
cross_spectrum:         CC(f, s) = int G(v) G(v - f) exp(+j 2 pi v s) dv

so that F[R0(u + a) R0*(u + b)](f) = exp(j 2 pi f b) * CC(f, a - b).
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from ._quad import band_correlation
from .errors import ConfigurationError

_SINC_SERIES_CUTOFF = 1e-4


def sinc(x):
    """sin(x)/x with sinc(0) = 1, using a series branch for small |x|."""
    arr = np.asarray(x, dtype=float)
    small = np.abs(arr) < _SINC_SERIES_CUTOFF
    safe = np.where(small, 1.0, arr)
    series = 1.0 - arr * arr / 6.0 * (1.0 - arr * arr / 20.0)
    out = np.where(small, series, np.sin(safe) / safe)
    if np.ndim(x) == 0:
        return float(out)
    return out


@dataclass(frozen=True)
class AutocorrSample:
    """One source-autocorrelation sample: R0 at a given lag."""

    lag: float  # [s]
    value: complex  # [W]


class OpticalSpectrum:
    """Common interface of the spectrum models (see module docstring)."""

    carrier_f0: float

    def total_power(self) -> float:
        raise NotImplementedError

    def psd(self, f):
        raise NotImplementedError

    def autocorrelation(self, lag):
        raise NotImplementedError

    def intensity_autoconvolution(self, f):
        raise NotImplementedError

    def cross_spectrum(self, f, shift):
        raise NotImplementedError

    def support(self) -> tuple[float, float]:
        raise NotImplementedError

    def lag_product_spectrum(self, f, a: float, b: float):
        """Transform of R0(u + a) R0*(u + b) evaluated at frequency f."""
        f = np.asarray(f, dtype=float)
        return np.exp(2j * np.pi * f * b) * self.cross_spectrum(f, a - b)

    def autocorrelation_samples(self, lags) -> list[AutocorrSample]:
        values = np.atleast_1d(self.autocorrelation(np.atleast_1d(np.asarray(lags, dtype=float))))
        return [AutocorrSample(lag=float(u), value=complex(v)) for u, v in zip(np.atleast_1d(lags), values)]

    def with_unit_scale(self) -> "OpticalSpectrum":
        """Copy rescaled to a canonical PSD level (for scale-free ratios)."""
        raise NotImplementedError


@dataclass(frozen=True)
class RectangularSpectrum(OpticalSpectrum):
    """Flat double-sided PSD of level ``n0`` over ``[-b/2, b/2]``."""

    n0: float  # PSD magnitude [W/Hz]
    b: float  # full optical bandwidth [Hz]
    carrier_f0: float = 0.0

    def __post_init__(self):
        if not (np.isfinite(self.n0) and self.n0 > 0):
            raise ConfigurationError("rectangular spectrum requires n0 > 0")
        if not (np.isfinite(self.b) and self.b > 0):
            raise ConfigurationError("rectangular spectrum requires b > 0")

    def total_power(self) -> float:
        return self.n0 * self.b

    def psd(self, f):
        f = np.asarray(f, dtype=float)
        return np.where(np.abs(f) <= self.b / 2.0, self.n0, 0.0)

    def autocorrelation(self, lag):
        lag = np.asarray(lag, dtype=float)
        out = np.asarray(self.n0 * self.b * sinc(np.pi * self.b * lag), dtype=complex)
        return out if lag.ndim else complex(out)

    def intensity_autoconvolution(self, f):
        f = np.asarray(f, dtype=float)
        out = self.n0**2 * np.clip(self.b - np.abs(f), 0.0, None)
        return out if out.ndim else float(out)

    def cross_spectrum(self, f, shift):
        f = np.asarray(f, dtype=float)
        width = np.clip(self.b - np.abs(f), 0.0, None)
        out = (
            self.n0**2
            * width
            * sinc(np.pi * width * shift)
            * np.exp(1j * np.pi * f * shift)
        )
        return np.where(width > 0, out, 0.0 + 0.0j)

    def support(self) -> tuple[float, float]:
        return (-self.b / 2.0, self.b / 2.0)

    def with_unit_scale(self) -> "RectangularSpectrum":
        return RectangularSpectrum(n0=1.0, b=self.b, carrier_f0=self.carrier_f0)


@dataclass(frozen=True)
class TabulatedSpectrum(OpticalSpectrum):
    """PSD samples on a uniform grid, linearly interpolated, zero-extended.

    The stored model is the hat-basis expansion of the samples, so the
    autocorrelation below is the exact Fourier transform of the interpolant
    (including the half-triangle roll-offs one grid step beyond each end).
    """

    grid: np.ndarray  # uniformly spaced baseband frequencies [Hz]
    values: np.ndarray  # nonnegative PSD samples [W/Hz]
    carrier_f0: float = 0.0
    _acorr_coeffs: np.ndarray = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        grid = np.asarray(self.grid, dtype=float)
        values = np.asarray(self.values, dtype=float)
        if grid.ndim != 1 or grid.size < 64:
            raise ConfigurationError("tabulated grid needs >= 64 points")
        if values.shape != grid.shape:
            raise ConfigurationError("grid and values must have equal length")
        steps = np.diff(grid)
        if np.any(steps <= 0):
            raise ConfigurationError("grid must be strictly increasing")
        step = steps[0]
        if not np.allclose(steps, step, rtol=1e-9, atol=0.0):
            raise ConfigurationError("grid must be uniformly spaced")
        if np.any(values < 0) or not np.all(np.isfinite(values)):
            raise ConfigurationError("PSD samples must be finite and >= 0")
        if values.sum() * step <= 0:
            raise ConfigurationError("total power must be positive")
        grid = grid.copy()
        values = values.copy()
        grid.setflags(write=False)
        values.setflags(write=False)
        object.__setattr__(self, "grid", grid)
        object.__setattr__(self, "values", values)
        object.__setattr__(self, "_acorr_coeffs", None)

    @property
    def step(self) -> float:
        return float(self.grid[1] - self.grid[0])

    def total_power(self) -> float:
        # hat expansion integrates to step * sum(values)
        return float(self.values.sum() * self.step)

    def psd(self, f):
        f = np.asarray(f, dtype=float)
        step = self.step
        grid_ext = np.concatenate(([self.grid[0] - step], self.grid, [self.grid[-1] + step]))
        values_ext = np.concatenate(([0.0], self.values, [0.0]))
        return np.interp(f, grid_ext, values_ext, left=0.0, right=0.0)

    def autocorrelation(self, lag):
        scalar = np.ndim(lag) == 0
        lag = np.atleast_1d(np.asarray(lag, dtype=float))
        step = self.step
        series = np.empty(lag.shape, dtype=complex)
        for i, u in enumerate(lag):  # lag-wise to bound memory on fine grids
            series[i] = np.exp(2j * np.pi * u * self.grid) @ self.values
        out = step * sinc(np.pi * step * lag) ** 2 * series
        return complex(out[0]) if scalar else out

    def _hat_correlation_coeffs(self) -> np.ndarray:
        cached = self._acorr_coeffs
        if cached is None:
            from scipy.signal import fftconvolve

            # c[m] = sum_k v[k] v[k－m], m = -(N-1)..(N-1)
            cached = fftconvolve(self.values, self.values[::-1])
            object.__setattr__(self, "_acorr_coeffs", cached)
        return cached

    def intensity_autoconvolution(self, f):
        f = np.atleast_1d(np.asarray(f, dtype=float))
        step = self.step
        coeffs = self._hat_correlation_coeffs()
        n = self.values.size
        out = np.zeros(f.shape)
        m_center = f / step
        for offset in range(-2, 3):
            m = np.floor(m_center).astype(int) + offset
            s = m_center - m
            kernel = _hat_autocorrelation(s)
            idx = m + (n - 1)
            valid = (idx >= 0) & (idx < coeffs.size) & (kernel > 0)
            out[valid] += coeffs[idx[valid]] * kernel[valid]
        out *= step
        return out if out.size > 1 else float(out[0])

    def cross_spectrum(self, f, shift):
        f = np.atleast_1d(np.asarray(f, dtype=float))
        sup = self.support()
        if shift == 0.0:
            w1 = self.psd
        else:
            def w1(v):
                return self.psd(v) * np.exp(2j * np.pi * v * shift)
        out = band_correlation(w1, self.psd, sup, sup, f, cycle_rate=abs(shift))
        return out if out.size > 1 else complex(out[0])

    def support(self) -> tuple[float, float]:
        step = self.step
        return (float(self.grid[0]) - step, float(self.grid[-1]) + step)

    def with_unit_scale(self) -> "TabulatedSpectrum":
        scale = float(self.values.max())
        return TabulatedSpectrum(
            grid=self.grid, values=self.values / scale, carrier_f0=self.carrier_f0
        )


def _hat_autocorrelation(s: np.ndarray) -> np.ndarray:
    """Autocorrelation of the unit triangular hat, support |s| <= 2."""
    s = np.abs(s)
    out = np.zeros(s.shape)
    inner = s <= 1.0
    outer = (s > 1.0) & (s < 2.0)
    si = s[inner]
    out[inner] = 2.0 / 3.0 - si**2 + si**3 / 2.0
    so = s[outer]
    out[outer] = (2.0 - so) ** 3 / 6.0
    return out


def tabulate(spectrum: OpticalSpectrum, n_points: int, pad: float = 0.0) -> TabulatedSpectrum:
    """Sample any spectrum model onto a uniform grid (testing aid)."""
    lo, hi = spectrum.support()
    span = hi - lo
    grid = np.linspace(lo - pad * span, hi + pad * span, n_points)
    return TabulatedSpectrum(
        grid=grid,
        values=np.asarray(spectrum.psd(grid), dtype=float),
        carrier_f0=spectrum.carrier_f0,
    )
