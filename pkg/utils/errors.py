"""
Exception hierarchy for the toolkit.
Every error the CLI should turn into a usage/input exit derives from ToolkitError.
"""


class ToolkitError(RuntimeError):
    """Base class; the CLI maps it to exit code 2."""
    exit_code = 2


class InputError(ToolkitError):
    """Malformed or out-of-range user input."""


class DomainError(ToolkitError):
    """An operator or function is evaluated outside its domain."""


class MissingVertexError(DomainError):
    """An operator family has no operator at a required vertex."""

    def __init__(self, vertex, message: str = ""):
        self.vertex = vertex
        super().__init__(message or f"operator family is not defined at vertex {vertex}")


class SingularityError(DomainError):
    """A bracket or denominator vanishes at a needed argument."""


class ShapeError(ToolkitError):
    """Operators on different fibers (base or order mismatch)."""


class NumericError(ToolkitError):
    """An iterative computation did not converge."""


class InversionError(ToolkitError):
    """A block operator is singular."""

    def __init__(self, vertex, message: str = ""):
        self.vertex = vertex
        super().__init__(message or f"operator at vertex {vertex} is not invertible")


class PreconditionError(ToolkitError):
    """An operation's precondition does not hold for the given family."""


class UnsupportedError(ToolkitError):
    """The requested combination is not supported."""
