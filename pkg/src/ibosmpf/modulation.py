"""RF modulation schemes as finite Fourier series at one fundamental.

A modulation function m(t) = sum_n M_n exp(j n 2 pi f_m t) is stored by its
coefficient map.  Scheme constructors cover the small-signal double- and
single-sideband amplitude cases, truncated-Bessel phase modulation, the
unmodulated carrier, and arbitrary custom coefficient pairs for both arms.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Mapping, Optional

import numpy as np

from .errors import ConfigurationError

MAX_HARMONIC_ORDER = 8
_SMALL_SIGNAL_GAMMA_MAX = 1.5


def bessel_j0(x: float) -> float:
    """J0 by ascending series; converges to 1e-12 well past |x| = 1.5."""
    q = x * x / 4.0
    term = 1.0
    total = 1.0
    for k in range(1, 40):
        term *= -q / (k * k)
        total += term
        if abs(term) < 1e-18:
            break
    return total


def bessel_j1(x: float) -> float:
    """J1 by ascending series; same accuracy regime as :func:`bessel_j0`."""
    q = x * x / 4.0
    term = x / 2.0
    total = term
    for k in range(1, 40):
        term *= -q / (k * (k + 1))
        total += term
        if abs(term) < 1e-18:
            break
    return total


class ModulationKind(str, Enum):
    DSB = "dsb"
    SSB = "ssb"
    PM = "pm"
    UNMODULATED = "unmodulated"
    CUSTOM = "custom"


@dataclass(frozen=True)
class HarmonicModulation:
    """Finite Fourier series m(t) = sum_n M_n exp(j n 2 pi f_m t)."""

    f_m: float
    coeffs: Mapping[int, complex]

    def __post_init__(self):
        if not (math.isfinite(self.f_m) and self.f_m >= 0):
            raise ConfigurationError("modulation fundamental must be finite and >= 0")
        cleaned = {}
        for n, c in dict(self.coeffs).items():
            n = int(n)
            if abs(n) > MAX_HARMONIC_ORDER:
                raise ConfigurationError(
                    f"harmonic order {n} exceeds the supported {MAX_HARMONIC_ORDER}"
                )
            c = complex(c)
            if c != 0:
                cleaned[n] = c
        object.__setattr__(self, "coeffs", cleaned)

    def coefficient(self, n: int) -> complex:
        return self.coeffs.get(n, 0.0 + 0.0j)

    def orders(self) -> tuple[int, ...]:
        return tuple(sorted(self.coeffs))

    def max_order(self) -> int:
        return max((abs(n) for n in self.coeffs), default=0)

    def is_constant(self) -> bool:
        return all(n == 0 for n in self.coeffs)

    def evaluate(self, t) -> np.ndarray:
        t = np.asarray(t, dtype=float)
        out = np.zeros(t.shape, dtype=complex)
        for n, c in self.coeffs.items():
            out += c * np.exp(2j * np.pi * n * self.f_m * t)
        return out


def cyclic_autocorrelation(m: HarmonicModulation, s: int, v) -> complex:
    """s-th cyclic autocorrelation: sum_q M_q M*_{q-s} exp(j 2 pi f_m q v)."""
    v = np.asarray(v, dtype=float)
    out = np.zeros(v.shape, dtype=complex)
    for q, c in m.coeffs.items():
        partner = m.coefficient(q - s)
        if partner != 0:
            out += c * np.conj(partner) * np.exp(2j * np.pi * m.f_m * q * v)
    return out if out.ndim else complex(out)


def cyclic_orders(m: HarmonicModulation) -> tuple[int, ...]:
    """Cyclic frequencies s with a nonzero autocorrelation."""
    orders = m.orders()
    present = sorted({q - p for q in orders for p in orders})
    return tuple(present)


@dataclass(frozen=True)
class SchemeConfig:
    """Modulation scheme selector with its small-signal index."""

    kind: ModulationKind
    f_m: float
    gamma: float = 0.0
    arm_ratio_k: complex = 1.0 + 0.0j
    m1_coeffs: Optional[Mapping[int, complex]] = None
    m2_coeffs: Optional[Mapping[int, complex]] = None

    def __post_init__(self):
        kind = ModulationKind(self.kind)
        object.__setattr__(self, "kind", kind)
        if self.gamma < 0 or not math.isfinite(self.gamma):
            raise ConfigurationError("gamma must be finite and >= 0")
        if kind in (ModulationKind.DSB, ModulationKind.SSB, ModulationKind.PM):
            if self.gamma > _SMALL_SIGNAL_GAMMA_MAX:
                raise ConfigurationError(
                    "small-signal constructors require gamma <= "
                    f"{_SMALL_SIGNAL_GAMMA_MAX}"
                )
        if kind is ModulationKind.CUSTOM and self.m1_coeffs is None:
            raise ConfigurationError("custom scheme needs m1_coeffs")


def build_scheme(cfg: SchemeConfig) -> tuple[HarmonicModulation, HarmonicModulation, complex]:
    """Arm modulation functions (m1, m2) and the constant-arm amplitude k.

    Shared-modulator kinds return identical arms with k = 1.  Single-arm
    kinds return a constant second arm; k carries any extra amplitude (for
    the polarization-modulator and dual-input equivalents).
    """
    gamma = cfg.gamma
    f_m = cfg.f_m
    kind = cfg.kind
    if kind is ModulationKind.UNMODULATED or (
        gamma == 0.0 and kind in (ModulationKind.DSB, ModulationKind.SSB)
    ):
        m = HarmonicModulation(f_m, {0: 1.0})
        return m, m, 1.0 + 0.0j
    if kind is ModulationKind.DSB:
        m = HarmonicModulation(f_m, {-1: gamma / 2.0, 0: 1.0, 1: gamma / 2.0})
        return m, m, 1.0 + 0.0j
    if kind is ModulationKind.SSB:
        m = HarmonicModulation(f_m, {0: 1.0, 1: gamma / 2.0})
        return m, m, 1.0 + 0.0j
    if kind is ModulationKind.PM:
        j0 = bessel_j0(gamma)
        j1 = bessel_j1(gamma)
        m1 = HarmonicModulation(f_m, {-1: -j1, 0: j0, 1: j1})
        m2 = HarmonicModulation(f_m, {0: 1.0})
        return m1, m2, complex(cfg.arm_ratio_k)
    if kind is ModulationKind.CUSTOM:
        m1 = HarmonicModulation(f_m, cfg.m1_coeffs)
        m2 = HarmonicModulation(f_m, cfg.m2_coeffs if cfg.m2_coeffs is not None else {0: 1.0})
        return m1, m2, complex(cfg.arm_ratio_k)
    raise ConfigurationError(f"unknown modulation kind {cfg.kind!r}")


def polarization_modulator_scheme(gamma: float, f_m: float) -> SchemeConfig:
    """Single-arm equivalent of the polarization-modulator setup."""
    j0 = bessel_j0(gamma)
    j1 = bessel_j1(gamma)
    return SchemeConfig(
        kind=ModulationKind.CUSTOM,
        f_m=f_m,
        gamma=gamma,
        arm_ratio_k=complex(j0),
        m1_coeffs={-1: 1j * j1, 1: 1j * j1},
        m2_coeffs={0: 1.0},
    )


def dual_input_mzm_scheme(gamma: float, f_m: float) -> SchemeConfig:
    """Single-arm equivalent of the quadrature-biased dual-input modulator."""
    j0 = bessel_j0(gamma)
    j1 = bessel_j1(gamma)
    return SchemeConfig(
        kind=ModulationKind.CUSTOM,
        f_m=f_m,
        gamma=gamma,
        arm_ratio_k=1j * j0,
        m1_coeffs={-1: j1, 1: j1},
        m2_coeffs={0: 1.0},
    )


def gamma_from_csr(csr_db: float) -> float:
    """Modulation index from a carrier-to-sideband ratio in dB."""
    if not math.isfinite(csr_db):
        raise ConfigurationError("CSR must be finite")
    return 2.0 * 10.0 ** (-csr_db / 20.0)


def csr_from_gamma(gamma: float) -> float:
    """Carrier-to-sideband ratio in dB from the modulation index."""
    if gamma <= 0:
        raise ConfigurationError("gamma must be positive to define a CSR")
    return 20.0 * math.log10(2.0 / gamma)
