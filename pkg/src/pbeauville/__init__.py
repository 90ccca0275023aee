"""Beauville structures on finite p-groups given by power-commutator presentations."""

from .pc import PcPresentation, PresentationError, parse_presentation, format_presentation, collect
from .group import ConcreteGroup, InconsistentPresentation

__version__ = "0.1.0"

__all__ = [
    "PcPresentation", "PresentationError", "parse_presentation", "format_presentation",
    "collect", "ConcreteGroup", "InconsistentPresentation", "__version__",
]
