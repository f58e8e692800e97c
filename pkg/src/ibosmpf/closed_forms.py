"""Closed-form intensity spectra for the shared-modulator configuration.

Both arms carry the same modulation, so the detected intensity PSD factors
into an interference kernel H built from the source autocorrelation and the
cyclic autocorrelations of the modulation.  Discrete lines live at
multiples of the RF fundamental; the continuum is built from fringed
self-convolutions of the optical PSD.

Each evaluator exists in two flavours: ``exact`` keeps every kernel term,
while the approximate forms drop the interferometric cross terms (valid
when the optical bandwidth times the delay is large) and assume a flat
self-convolution across the RF band.  SNR reports carry both so the
approximation error stays visible.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .config import LinkConfig
from .constants import K_B, T_STANDARD
from .decomposition import SpectralDecomposition
from .errors import ConfigurationError, NoPassbandError
from .modulation import (
    HarmonicModulation,
    ModulationKind,
    build_scheme,
    cyclic_autocorrelation,
    cyclic_orders,
)
from .spectrum import OpticalSpectrum, RectangularSpectrum, sinc


def interference_kernel(spectrum: OpticalSpectrum, delay: float, carrier_phase: float, x):
    """Two-arm kernel H(x) = 2 R0(x) + R0(x-d) e^{-j p} + R0(x+d) e^{+j p}."""
    r = spectrum.autocorrelation
    phase = np.exp(-1j * carrier_phase)
    return 2.0 * r(x) + r(np.asarray(x) - delay) * phase + r(np.asarray(x) + delay) / phase


def fringed_noise_spectrum(
    spectrum: OpticalSpectrum,
    delay: float,
    carrier_phase: float,
    f,
    exact: bool = True,
):
    """Transform of |H(u)|^2: the fringed intensity-noise shaping spectrum.

    The leading term is [4 + 2 cos(2 pi f d)] S0(f); the exact form adds the
    delay-offset cross spectra, which are suppressed like sinc(pi B d).
    """
    f = np.asarray(f, dtype=float)
    s0 = spectrum.intensity_autoconvolution(f)
    main = (4.0 + 2.0 * np.cos(2.0 * np.pi * f * delay)) * s0
    if not exact:
        return main
    if delay == 0.0:
        # all shifts coincide: |H|^2 = 16 |R0|^2
        return 16.0 * s0
    cc_d = spectrum.cross_spectrum(f, delay)
    cc_2d = spectrum.cross_spectrum(f, 2.0 * delay)
    fringe = np.exp(-2j * np.pi * f * delay)
    cross = 4.0 * np.real(
        np.exp(1j * carrier_phase) * (1.0 + fringe) * cc_d
    ) + 2.0 * np.real(np.exp(2j * carrier_phase) * fringe * cc_2d)
    return main + cross


def shared_modulator_decomposition(
    link: LinkConfig, f_grid: np.ndarray, exact: bool = True
) -> SpectralDecomposition:
    """Line/continuum intensity PSD when both arms share one modulator."""
    m1, m2, k = build_scheme(link.scheme)
    if m1.coeffs != m2.coeffs:
        raise ConfigurationError("shared-modulator closed form needs identical arms")
    if abs(k - 1.0) > 1e-12 or abs(link.interferometer.arm_ratio_k - 1.0) > 1e-12:
        raise ConfigurationError("shared-modulator closed form assumes balanced arms")
    spectrum = link.spectrum
    d = link.delay
    phase = link.carrier_phase
    f_m = m1.f_m
    phi = link.phi

    f_grid = np.asarray(f_grid, dtype=float)
    continuum = np.zeros_like(f_grid)
    line_freqs = []
    line_powers = []
    v_grid = 2.0 * np.pi * phi * f_grid
    for s in cyclic_orders(m1):
        weight = np.abs(cyclic_autocorrelation(m1, s, v_grid)) ** 2
        continuum += weight * np.real(
            fringed_noise_spectrum(spectrum, d, phase, f_grid + s * f_m, exact=exact)
        )
        f_line = -s * f_m
        v_line = 2.0 * np.pi * phi * f_line
        h = interference_kernel(spectrum, d, phase, v_line)
        w_line = float(
            np.abs(h) ** 2 * np.abs(cyclic_autocorrelation(m1, s, v_line)) ** 2
        )
        line_freqs.append(f_line)
        line_powers.append(w_line)

    decomp = SpectralDecomposition(
        frequencies=f_grid,
        continuum=continuum,
        line_frequencies=np.array(line_freqs),
        line_powers=np.array(line_powers),
        metadata={"path": "closed-form", "exact": exact, "f_m": f_m},
    )
    return decomp


def noise_psd_shared(link: LinkConfig, f, exact: bool = True):
    """Continuum intensity-noise PSD for a shared-modulator scheme."""
    m1, m2, _ = build_scheme(link.scheme)
    if m1.coeffs != m2.coeffs:
        raise ConfigurationError("shared-modulator noise PSD needs identical arms")
    f = np.asarray(f, dtype=float)
    v = 2.0 * np.pi * link.phi * f
    out = np.zeros(f.shape)
    for s in cyclic_orders(m1):
        weight = np.abs(cyclic_autocorrelation(m1, s, v)) ** 2
        out += weight * np.real(
            fringed_noise_spectrum(
                link.spectrum, link.delay, link.carrier_phase, f + s * m1.f_m, exact=exact
            )
        )
    return out if out.ndim else float(out)


def scheme_line_power(link: LinkConfig, f_m: float) -> float:
    """Detected RF power at the fundamental: both +-f_m line weights."""
    m1, m2, k = build_scheme(link.scheme)
    if m1.coeffs != m2.coeffs or abs(k - 1.0) > 1e-12:
        raise ConfigurationError("scheme_line_power needs a shared-modulator scheme")
    m1 = HarmonicModulation(f_m, m1.coeffs)
    total = 0.0
    for s in (-1, 1):
        f_line = -s * f_m
        v_line = 2.0 * np.pi * link.phi * f_line
        h = interference_kernel(link.spectrum, link.delay, link.carrier_phase, v_line)
        total += float(
            np.abs(h) ** 2 * np.abs(cyclic_autocorrelation(m1, s, v_line)) ** 2
        )
    return total


def signal_power_ssb(link: LinkConfig, f_m: float | None = None, flat: bool = False) -> float:
    """Single-sideband detected signal power at f_m.

    ``flat=True`` selects the passband approximation 2 (gamma/2)^2 R0(0)^2,
    exact only at the passband center with strong fringe suppression.
    """
    if link.scheme.kind is not ModulationKind.SSB:
        raise ConfigurationError("signal_power_ssb requires an SSB scheme")
    gamma = link.scheme.gamma
    if f_m is None:
        f_m = link.scheme.f_m
    if flat:
        return 2.0 * (gamma / 2.0) ** 2 * float(link.spectrum.total_power()) ** 2
    v_m = 2.0 * np.pi * link.phi * f_m
    h = interference_kernel(link.spectrum, link.delay, link.carrier_phase, v_m)
    return 2.0 * (gamma / 2.0) ** 2 * float(np.abs(h) ** 2)


def signal_power_dsb(link: LinkConfig, f_m: float | None = None, convention: str = "exact") -> float:
    """Double-sideband detected signal power at f_m.

    ``convention="exact"`` sums the +-f_m line weights,
    8 (gamma/2)^2 cos^2(pi f_m v_m) |H(v_m)|^2.  ``convention="response"``
    returns one quarter of that (a per-sideband normalization that leaves
    any normalized response curve unchanged); see the README notes.
    """
    if link.scheme.kind is not ModulationKind.DSB:
        raise ConfigurationError("signal_power_dsb requires a DSB scheme")
    gamma = link.scheme.gamma
    if f_m is None:
        f_m = link.scheme.f_m
    v_m = 2.0 * np.pi * link.phi * f_m
    h = interference_kernel(link.spectrum, link.delay, link.carrier_phase, v_m)
    fading = math.cos(math.pi * f_m * v_m) ** 2
    exact = 8.0 * (gamma / 2.0) ** 2 * fading * float(np.abs(h) ** 2)
    if convention == "exact":
        return exact
    if convention == "response":
        return exact / 4.0
    raise ConfigurationError("convention must be 'exact' or 'response'")


def dsb_fading_null_frequency(phi: float, order: int = 0) -> float:
    """RF frequency of the dispersion-fading null cos(2 pi^2 phi f^2) = 0."""
    if phi <= 0:
        raise NoPassbandError("fading nulls at positive RF need phi > 0")
    return math.sqrt((0.5 + order) / (2.0 * math.pi * phi))


def passband_shape(link: LinkConfig, detuning) -> np.ndarray:
    """Normalized passband magnitude around the center: sinc^2 profile."""
    if not isinstance(link.spectrum, RectangularSpectrum):
        raise ConfigurationError("passband_shape is defined for rectangular spectra")
    detuning = np.asarray(detuning, dtype=float)
    arg = 2.0 * np.pi**2 * link.spectrum.b * link.phi * detuning
    out = np.asarray(sinc(arg)) ** 2
    return out if detuning.ndim else float(out)


@dataclass(frozen=True)
class SnrReport:
    """Per-hertz SNR of the filtered RF tone at the passband center."""

    scheme: str
    center_frequency: float
    snr_linear: float
    snr_db_hz: float
    signal_power: float
    noise_psd_at_signal: float
    noise_breakdown: dict
    snr_approx_linear: float
    snr_approx_db_hz: float


def _cos_fringe_argument(f_c: float, phi: float) -> float:
    """cos argument 4 pi^2 phi f_c^2, accumulated in extended precision."""
    t = np.longdouble(phi) * np.longdouble(f_c) * np.longdouble(f_c)
    theta = 4.0 * np.longdouble(np.pi) ** 2 * t
    return float(np.cos(theta))


def _ssb_noise_terms(link: LinkConfig, f_c: float, exact: bool) -> dict:
    v_c = 2.0 * np.pi * link.phi * f_c
    m1, _, _ = build_scheme(link.scheme)

    def sh(f):
        return float(
            np.real(
                fringed_noise_spectrum(
                    link.spectrum, link.delay, link.carrier_phase, f, exact=exact
                )
            )
        )

    w0 = abs(cyclic_autocorrelation(m1, 0, v_c)) ** 2
    wp = abs(cyclic_autocorrelation(m1, 1, v_c)) ** 2
    wm = abs(cyclic_autocorrelation(m1, -1, v_c)) ** 2
    return {
        "main_band": 2.0 * w0 * sh(f_c),
        "upconverted_sum": 2.0 * wp * sh(f_c + m1.f_m),
        "upconverted_baseband": 2.0 * wm * sh(f_c - m1.f_m),
    }


def noise_power_ssb_at(
    link: LinkConfig, f_c: float | None = None, exact: bool = True
) -> tuple[float, dict]:
    """Noise power in 1 Hz at +-f_c (continuum only) with its breakdown.

    The three parts are the co-frequency beat term and the two up-converted
    images (from 2 f_c and from baseband).
    """
    if link.scheme.kind is not ModulationKind.SSB:
        raise ConfigurationError("noise_power_ssb_at requires an SSB scheme")
    if f_c is None:
        f_c = link.passband_center()
    link = link.with_modulation_frequency(f_c)
    terms = _ssb_noise_terms(link, f_c, exact=exact)
    return sum(terms.values()), terms


def snr_ssb(link: LinkConfig) -> SnrReport:
    """SSB SNR at the passband center: exact ratio plus the flat approximation.

    The approximation is B / (8 [cos th + 1/2]^2 + 8/g^2 [cos th + 2] + 6)
    with th = 4 pi^2 phi f_c^2, valid for B d >> 1 and B >> f_c.
    """
    if link.scheme.kind is not ModulationKind.SSB:
        raise ConfigurationError("snr_ssb requires an SSB scheme")
    f_c = link.passband_center()
    link = link.with_modulation_frequency(f_c)
    gamma = link.scheme.gamma
    if gamma <= 0:
        raise ConfigurationError("SNR needs gamma > 0")

    # scale-free ratio: unit-PSD copy of the spectrum (SNR has no N0)
    unit = link.with_spectrum(link.spectrum.with_unit_scale())
    sig_u = signal_power_ssb(unit, f_c)
    terms_u = _ssb_noise_terms(unit, f_c, exact=True)
    snr_linear = sig_u / sum(terms_u.values())

    signal = signal_power_ssb(link, f_c)
    terms = _ssb_noise_terms(link, f_c, exact=True)
    noise = sum(terms.values())

    if isinstance(link.spectrum, RectangularSpectrum):
        b = link.spectrum.b
        cth = _cos_fringe_argument(f_c, link.phi)
        denom = 8.0 * (cth + 0.5) ** 2 + 8.0 / gamma**2 * (cth + 2.0) + 6.0
        approx = b / denom
    else:
        approx = snr_linear
    return SnrReport(
        scheme="ssb",
        center_frequency=f_c,
        snr_linear=snr_linear,
        snr_db_hz=10.0 * math.log10(snr_linear),
        signal_power=signal,
        noise_psd_at_signal=noise,
        noise_breakdown=terms,
        snr_approx_linear=approx,
        snr_approx_db_hz=10.0 * math.log10(approx),
    )


def noise_figure(p_in_w: float, snr_db_hz: float) -> float:
    """NF = 10 lg[(P_in / k_B T_s) / SNR] with T_s = 290 K."""
    if p_in_w <= 0:
        raise ConfigurationError("input RF power must be positive")
    return 10.0 * math.log10(p_in_w / (K_B * T_STANDARD)) - snr_db_hz


def frequency_response_sweep(
    link: LinkConfig,
    f_grid: np.ndarray,
    normalize_db: bool = True,
) -> np.ndarray:
    """Signal power versus RF frequency for the configured scheme.

    Returns dB relative to the curve maximum when ``normalize_db`` is set,
    otherwise absolute powers.
    """
    f_grid = np.asarray(f_grid, dtype=float)
    kind = link.scheme.kind
    if kind is ModulationKind.SSB:
        power = np.array([signal_power_ssb(link, f) for f in f_grid])
    elif kind is ModulationKind.DSB:
        power = np.array([signal_power_dsb(link, f) for f in f_grid])
    elif kind is ModulationKind.PM:
        from .pm import signal_power_pm

        power = np.array([signal_power_pm(link, f) for f in f_grid])
    elif kind is ModulationKind.CUSTOM:
        from .engine import fundamental_line_power

        power = np.array([fundamental_line_power(link, f) for f in f_grid])
    else:
        raise ConfigurationError(f"no frequency response for scheme {kind}")
    if not normalize_db:
        return power
    peak = power.max()
    if peak <= 0:
        raise ConfigurationError("response is identically zero; cannot normalize")
    floor = peak * 1e-30
    return 10.0 * np.log10(np.maximum(power, floor) / peak)
