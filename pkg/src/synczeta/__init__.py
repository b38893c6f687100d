"""Exact-arithmetic workbench for synchronization counts #S(alpha^n, beta^n)
and their zeta functions."""

from .errors import SyncZetaError
from .exact import PowerSeries, RationalFunction
from .models import (CirclePower, CountSequence, FiniteMaps, HomologyData, SignedSubshiftSystem,
                     SIntegerPair, Subshift, ToralPair, generate_counts)
from .zeta import classify, reconstruct_zeta, zeta_report, zeta_series

__version__ = "0.1.0"

__all__ = [
    "SyncZetaError", "PowerSeries", "RationalFunction", "CirclePower", "CountSequence", "FiniteMaps",
    "HomologyData", "SignedSubshiftSystem", "SIntegerPair", "Subshift", "ToralPair", "generate_counts",
    "classify", "reconstruct_zeta", "zeta_report", "zeta_series",
]
