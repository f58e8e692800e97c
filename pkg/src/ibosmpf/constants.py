"""Physical constants (SI units)."""

from typing import Final

# Speed of light in vacuum (m/s)
C: Final[float] = 299_792_458.0

# Boltzmann constant (J/K)
K_B: Final[float] = 1.380649e-23

# Standard noise temperature (K)
T_STANDARD: Final[float] = 290.0
