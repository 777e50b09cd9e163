"""Exception hierarchy shared by every redproof module."""

from __future__ import annotations


class RedproofError(Exception):
    """Base class for all toolkit errors."""


class TautologyRejection(RedproofError, ValueError):
    """A candidate clause contains a variable with both polarities."""

    def __init__(self, var: int):
        super().__init__(f"tautological literal set: variable {var} occurs with both signs")
        self.var = var


class NotResolvable(RedproofError, ValueError):
    pass


class TooLarge(RedproofError):
    """An exhaustive oracle was asked to work above its variable limit."""


class WitnessNotInClause(RedproofError, ValueError):
    pass


class EmptyWitness(RedproofError, ValueError):
    pass


class InconsistentDerivedAssignment(RedproofError, ValueError):
    pass


class InconsistentAssignment(RedproofError, ValueError):
    pass


class NotAccepted(RedproofError):
    """A transformation was handed a proof its checker rejects."""

    def __init__(self, message: str, report=None):
        super().__init__(message)
        self.report = report


class RestrictionSatisfiesFormula(RedproofError):
    pass


class UnknownVariable(RedproofError, ValueError):
    pass


class TooManyPigeons(RedproofError, ValueError):
    pass


class VariableCollision(RedproofError, ValueError):
    pass


class InvalidExtension(RedproofError, ValueError):
    pass


class NotAnErProof(RedproofError):
    def __init__(self, message: str, report=None):
        super().__init__(message)
        self.report = report


class ConstructionError(RedproofError):
    """An emitted proof failed its own re-check. Always a toolkit bug."""

    def __init__(self, message: str, report=None):
        super().__init__(message)
        self.report = report


class ParseError(RedproofError, ValueError):
    def __init__(self, message: str, line: int | None = None):
        where = f"line {line}: " if line is not None else ""
        super().__init__(where + message)
        self.line = line
