"""Exception types shared across the package."""


class DomainError(ValueError):
    """An argument lies outside the domain of the operation."""


class InvariantError(RuntimeError):
    """An internal consistency check failed.

    Raising this means a bug (or a corrupted input that slipped past
    validation), never a user error.
    """
