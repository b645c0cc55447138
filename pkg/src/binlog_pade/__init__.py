"""Explicit Padé approximants for binomial-times-logarithm systems over Q.

Exact construction and certification of the approximants, normality tests
via generalized Hankel matrices, and the resulting linear independence
measures for values of (1+1/alpha)^w log^j(1+1/alpha).
"""
from .exact import Place, as_rational, heights
from .pade_binlog import PadeSystem, SystemConfig, build_row, build_system
from .series import TruncSeries

__all__ = [
    "Place",
    "PadeSystem",
    "SystemConfig",
    "TruncSeries",
    "as_rational",
    "build_row",
    "build_system",
    "heights",
]
__version__ = "0.1.0"
