"""Exception types shared across the package."""


class DomainError(ValueError):
    """An input lies outside the domain of an operation."""


class ResourceError(RuntimeError):
    """A configured size cap would be exceeded."""


class InternalConsistencyError(AssertionError):
    """A result contradicts a structural guarantee; indicates a bug."""
