"""Exception hierarchy.  CLI exit codes hang off ``exit_code``."""

from __future__ import annotations


class KssError(Exception):
    exit_code = 1


class InputError(KssError, ValueError):
    """Malformed input: bad shapes, non-rational strings, unknown keys."""

    exit_code = 2


class ModelValidationError(KssError):
    """A model failed validation; ``reason`` is a machine-readable code."""

    exit_code = 3

    NON_PRIMITIVE_RAY = "NON_PRIMITIVE_RAY"
    NOT_FANO = "NOT_FANO"
    NON_SIMPLICIAL_CONE = "NON_SIMPLICIAL_CONE"
    NOT_ANTICANONICAL = "NOT_ANTICANONICAL"
    NOT_EFFECTIVE = "NOT_EFFECTIVE"

    def __init__(self, reason: str, message: str = ""):
        super().__init__(f"{reason}: {message}" if message else reason)
        self.reason = reason
        self.message = message


class DegenerateInputError(KssError, ValueError):
    exit_code = 4


class DomainError(DegenerateInputError):
    """Argument outside the domain of an operation (u = 0, x outside the simplex)."""


class UnboundedError(DegenerateInputError):
    pass


class EmptyPolytopeError(DegenerateInputError):
    pass


class InvariantViolation(KssError, AssertionError):
    """A cross-check between two independent routes disagreed."""

    exit_code = 5

    def __init__(self, message: str, witness=None):
        super().__init__(message)
        self.witness = witness
