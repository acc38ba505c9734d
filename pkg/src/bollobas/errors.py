"""Exception types shared across the package."""


class BollobasError(Exception):
    """Base class for every error raised by this package."""


class FieldMismatchError(BollobasError):
    """Operands live in different ambient spaces or over different fields."""


class ShapeError(BollobasError):
    """A system's kind, arity, or context does not fit the requested operation."""


class PreconditionError(BollobasError):
    """A documented operation precondition was violated by the input."""


class LicensingError(BollobasError):
    """A bound was requested whose licensing condition is not verified.

    Weight values are always computable; inequality verdicts are refused
    unless the condition that makes the bound a theorem has been checked.
    """


class DuplicateTupleError(BollobasError):
    """A fill-up step produced a tuple already present in the system.

    This cannot happen on inputs that verify their condition; raising instead
    of silently dropping keeps a violated proof assumption visible.
    """


class BudgetError(BollobasError):
    """An enumeration or search exceeded its configured budget or guard."""


class DocumentError(BollobasError):
    """A system document failed to parse or validate."""

    def __init__(self, message: str, location: str | None = None):
        self.location = location
        super().__init__(message if location is None else f"{location}: {message}")
