"""Intensity-spectrum decomposition into discrete lines and a continuum.

The detected intensity PSD is a sum of delta lines (deterministic RF tones)
and a continuous noise floor.  Both analytic evaluators and the Monte-Carlo
estimator report this container; deltas are never represented on a sampled
grid.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np


@dataclass
class SpectralDecomposition:
    frequencies: np.ndarray  # continuum sample frequencies [Hz]
    continuum: np.ndarray  # noise PSD [intensity^2 / Hz]
    line_frequencies: np.ndarray  # discrete line positions [Hz]
    line_powers: np.ndarray  # integrated line powers [intensity^2]
    metadata: dict = field(default_factory=dict)

    def __post_init__(self):
        self.frequencies = np.asarray(self.frequencies, dtype=float)
        self.continuum = np.asarray(self.continuum, dtype=float)
        order = np.argsort(np.asarray(self.line_frequencies, dtype=float))
        self.line_frequencies = np.asarray(self.line_frequencies, dtype=float)[order]
        self.line_powers = np.asarray(self.line_powers, dtype=float)[order]

    def continuum_at(self, f: float) -> float:
        return float(np.interp(f, self.frequencies, self.continuum))

    def line_power_at(self, f: float, rtol: float = 1e-9, atol: float = 1.0) -> float:
        """Total power of lines within a tolerance of ``f`` (0 if none)."""
        sel = np.isclose(self.line_frequencies, f, rtol=rtol, atol=atol)
        return float(self.line_powers[sel].sum())

    def clamp_continuum(self, floor_scale: float = 0.0) -> None:
        """Clamp tiny negative continuum values, recording the excursion."""
        min_value = float(self.continuum.min(initial=0.0))
        clipped = int(np.count_nonzero(self.continuum < floor_scale))
        self.continuum = np.clip(self.continuum, floor_scale, None)
        self.metadata["continuum_min_before_clamp"] = min_value
        self.metadata["continuum_clamped_points"] = clipped
