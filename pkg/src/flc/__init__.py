"""Framed circles in 4-manifolds: when the twisted framing is isotopic, and what rot does."""

from .classifier import ClassificationReport, DaxOracle, ManifoldData, classify
from .groups import FGAbelianGroup, FiniteTableGroup, SelfCentralizingZ, UnsupportedQuery, ValidationError
from .pi2mod import Pi2Module
from .spinclass import AlmostSpinAbelian, AlmostSpinCocycle, Spin, SpinType, TotallyNonspin

__all__ = [
    "AlmostSpinAbelian",
    "AlmostSpinCocycle",
    "ClassificationReport",
    "DaxOracle",
    "FGAbelianGroup",
    "FiniteTableGroup",
    "ManifoldData",
    "Pi2Module",
    "SelfCentralizingZ",
    "Spin",
    "SpinType",
    "TotallyNonspin",
    "UnsupportedQuery",
    "ValidationError",
    "classify",
]
