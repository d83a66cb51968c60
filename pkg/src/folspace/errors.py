"""Exception hierarchy shared by all modules."""

from __future__ import annotations


class FolSpaceError(Exception):
    """Base class for domain errors raised by this package."""


class FormulaError(FolSpaceError, ValueError):
    """Malformed formula text or an AST that does not fit the vocabulary."""

    def __init__(self, message: str, position: int | None = None):
        self.position = position
        if position is not None:
            message = f"{message} (at position {position})"
        super().__init__(message)


class ParseError(FormulaError):
    pass


class UnknownPredicate(FormulaError):
    pass


class ArityMismatch(FormulaError):
    pass


class UnboundVariable(FormulaError):
    pass


class VocabularyError(FolSpaceError, ValueError):
    pass


class BudgetExceeded(FolSpaceError):
    """An enumeration would produce more elements than the configured budget."""

    def __init__(self, message: str, size: int | None = None):
        self.size = size
        super().__init__(message)


class ResultTooLarge(FolSpaceError):
    pass


class RankTooHigh(FolSpaceError):
    pass


class FreeVariableEscape(FolSpaceError):
    pass


class RankZero(FolSpaceError):
    pass


class RankMismatch(FolSpaceError, ValueError):
    pass


class RepresentationNotDense(FolSpaceError):
    pass


class NotANode(FolSpaceError, KeyError):
    pass


class AnchorNotInTree(NotANode):
    pass


class NotAProbability(FolSpaceError, ValueError):
    pass


class NonPositiveEntry(FolSpaceError, ValueError):
    pass


class VocabularyMismatch(FolSpaceError, ValueError):
    pass


class BasisMismatch(FolSpaceError, ValueError):
    pass


class NegativeBelief(FolSpaceError, ValueError):
    pass


class DegenerateMatrix(FolSpaceError):
    pass


class InvalidCounts(FolSpaceError, ValueError):
    pass


class ModelsNotDistinct(FolSpaceError, ValueError):
    pass


class OracleIncomplete(FolSpaceError):
    """The satisfiability oracle cannot decide this vocabulary class."""


class ModelMismatch(FolSpaceError, ValueError):
    """A supplied model does not satisfy the sentence it should witness."""
