"""Exception types shared across the package."""


class RetroalgError(Exception):
    """Base class for all library errors."""


class ParseError(RetroalgError):
    """Malformed identity, rational or file text; carries a character offset."""

    def __init__(self, message: str, position: int) -> None:
        super().__init__(f"{message} (at position {position})")
        self.position = position


class ValidationError(RetroalgError):
    """Input data violates a structural requirement (file schema, algebra axioms)."""


class AlgebraMismatchError(RetroalgError):
    """Two elements of different algebras were combined."""


class WeightError(RetroalgError):
    """The operation requires an element of weight 1."""


class PreconditionError(RetroalgError):
    """A documented operation precondition does not hold."""


class CriterionError(RetroalgError):
    """The idempotent criterion is inapplicable: existence is not guaranteed."""
