"""Exact arithmetic over the 2-local field K = F_q((t))((pi)).

Witt vectors and Artin-Schreier-Witt conductors, the Cartier and residue
calculus on differential forms, Milnor K_2 symbols, the duality and
reciprocity pairings on finite windows, and Weil reciprocity on P^1.
"""

from .coeff import FiniteField, FqElem, FqPoly, get_field
from .errors import (DivisionByZero, DomainError, EmptyWindow, FactorizationBudgetExceeded,
                     LengthMismatch, NotAPthPower, NotClosed, PrecisionLoss, TwistViolation,
                     UndeterminedValuation)
from .series import INF, Context, LaurentElt, SeriesRing, format_series
from .witt import WittVec

__version__ = "0.1.0"

__all__ = [
    "Context", "DivisionByZero", "DomainError", "EmptyWindow", "FactorizationBudgetExceeded",
    "FiniteField", "FqElem", "FqPoly", "INF", "LaurentElt", "LengthMismatch", "NotAPthPower",
    "NotClosed", "PrecisionLoss", "SeriesRing", "TwistViolation", "UndeterminedValuation",
    "WittVec", "format_series", "get_field",
]
