"""Exception hierarchy.

ConfigurationError covers malformed inputs (bad units, missing fields,
invalid ranges).  DomainError covers numerically invalid operating points
for otherwise well-formed configurations (no passband, formula outside its
domain).  The CLI maps them to distinct exit codes.
"""


class ConfigurationError(ValueError):
    """Invalid or inconsistent configuration input."""


class DomainError(ValueError):
    """Operation requested outside its numeric domain."""


class NoPassbandError(DomainError):
    """Delay/dispersion combination does not produce a positive passband."""
