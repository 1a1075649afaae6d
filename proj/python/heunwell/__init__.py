"""Hyperbolic double-well bound states and wavepacket dynamics."""

from ._core import (
    DLE,
    DLO,
    DomainError,
    HeunwellError,
    Mixed,
    NumericalError,
    Well,
    __version__,
    refine_root,
)

__all__ = [
    "DLE",
    "DLO",
    "DomainError",
    "HeunwellError",
    "Mixed",
    "NumericalError",
    "Well",
    "__version__",
    "refine_root",
]
