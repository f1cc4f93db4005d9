"""Exception types shared across the package."""


class MixedSearchError(Exception):
    """Base class for every error raised by this package."""


class InputError(MixedSearchError, ValueError):
    """An argument violates an operation's precondition."""


class StructuralError(InputError):
    """A decomposition's tree or bag map is malformed (not a validation failure)."""


class ResourceGuardError(MixedSearchError):
    """An exhaustive computation was asked to run beyond its size guard."""


class StrategyFault(MixedSearchError):
    """A strategy emitted an illegal move or fugitive edge."""
