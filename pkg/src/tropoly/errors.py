"""Exception types shared across the kernel.

Two families matter to callers: DomainError for mathematically invalid
values (inverting the semiring zero, canonical form of the zero
polynomial, a point outside a Newton polytope) and UsageError for
structural misuse (arity or dimension mismatches, malformed input).
The CLI maps them to exit codes 1 and 2 respectively.
"""


class TropicalError(Exception):
    """Base class for all kernel errors."""


class DomainError(TropicalError):
    """An operation was applied to a value outside its domain."""


class UsageError(TropicalError):
    """Mismatched shapes, bad arguments, or malformed input."""


class ParseError(UsageError):
    """Syntax error in a CLI expression; carries the offending position."""

    def __init__(self, message, position):
        super().__init__(f"{message} (at position {position})")
        self.position = position


class InfeasibleError(DomainError):
    """A linear program was asked to optimize over an empty region."""
