"""Exception hierarchy for the kernel.

Checkers report failed axioms as data; exceptions are reserved for inputs
outside an operation's domain.
"""

from typing import Optional


class OperadKitError(Exception):
    """Base class for all kernel errors."""


class MathDomainError(OperadKitError):
    """Input is well formed but outside the operation's mathematical domain."""


class MixedVariant(MathDomainError):
    """Objects from different base categories were combined."""


class NotParallel(MathDomainError):
    """Morphisms do not share source and target."""


class SourceMismatch(MathDomainError):
    """Morphisms of a span do not share a source."""


class InvalidAction(MathDomainError):
    """A group action violates the identity or product law."""


class WrongVariant(MathDomainError):
    """The operation is not defined for this base category."""


class UnknownColor(MathDomainError):
    """A color outside the color set was used."""


class ColorMismatch(MathDomainError):
    """Sequences over different color sets were combined."""


class NonFinitary(MathDomainError):
    """The requested arity depends on data above a support bound."""


class StructureMismatch(MathDomainError):
    """Structures that must fit together do not."""


class MultiColoredInput(MathDomainError):
    """A single-colored operad was required."""


class InvalidAlgebra(MathDomainError):
    """An algebra fails its axioms."""


class TruncationTooSmall(MathDomainError):
    """The prespectrum truncation cannot decide the request."""


class BoundsTooTight(MathDomainError):
    """Generation bounds leave no valid instance."""


class UsageError(OperadKitError):
    """The request names something that does not exist."""


class UnknownSuite(UsageError):
    """No verification suite has this name."""


class UnknownEntity(UsageError):
    """The definition file declares no entity with this name."""


class DefinitionParseError(OperadKitError):
    """Definition file text that does not parse."""

    def __init__(self, message: str, line: int, column: int, source: Optional[str] = None):
        self.message = message
        self.line = line
        self.column = column
        self.source = source
        location = f"{source}:" if source else ""
        super().__init__(f"{location}{line}:{column}: {message}")
