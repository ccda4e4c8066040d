"""Exception hierarchy shared across the package.

The CLI maps these onto stable exit codes, so the split between parse,
invariant, and shape failures is part of the public contract.
"""


class EntnumError(Exception):
    """Base class for all package errors."""


class ParseError(EntnumError, ValueError):
    """Input could not be decoded into the expected JSON structure."""


class InvariantViolation(EntnumError, ValueError):
    """A value violates a domain invariant (normalization, positivity, ...)."""


class DimensionMismatch(EntnumError, ValueError):
    """Shapes or dimensions of otherwise valid values do not line up."""
