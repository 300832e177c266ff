"""Exception hierarchy.

Every error raised on purpose by the package derives from
:class:`CoherenceError`. The concrete classes also derive from the closest
builtin so callers that only catch ``ValueError`` keep working.
"""


class CoherenceError(Exception):
    """Base class for all package errors."""


class ArgumentError(CoherenceError, ValueError):
    """An argument is outside the domain of the operation."""


class DimensionError(ArgumentError):
    """Array shapes are wrong or incompatible."""


class SizeError(ArgumentError):
    """The requested system is larger than the dense solver allows."""


class ConfigError(ArgumentError):
    """A sweep or CLI configuration is invalid."""


class ContractError(CoherenceError, ArithmeticError):
    """A numerical contract was violated (Hermiticity, positivity, agreement)."""


class DegeneracyError(ContractError):
    """The ground state is degenerate, so a single-state answer is ill defined."""


class TableIOError(CoherenceError, OSError):
    """Reading or writing a result table failed."""
