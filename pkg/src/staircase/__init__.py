"""Exact enumeration, sampling and distribution laws for staircase tableaux."""
from .tableau import Symbol, Tableau, validate, weight, fill_uq, asep_type, involution, subtableau
from .measure import MeasureParams

__all__ = [
    "Symbol",
    "Tableau",
    "MeasureParams",
    "validate",
    "weight",
    "fill_uq",
    "asep_type",
    "involution",
    "subtableau",
]
__version__ = "0.1.0"
