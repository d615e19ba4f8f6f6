"""Exception types shared across the package."""


class CqsError(Exception):
    """Base class for all package errors."""


class DomainError(CqsError):
    """The input is outside an operation's mathematical domain."""


class SmoothConeError(DomainError):
    """The cone is smooth (index 1); there is no singularity to analyse."""


class HypersurfaceError(DomainError):
    """Embedding dimension <= 3: versal base irreducible, component machinery
    does not apply."""

    def __init__(self, message: str = "versal base irreducible"):
        super().__init__(message)


class ValidationError(CqsError):
    """A fan construction produced inconsistent geometry (implementation bug
    or inconsistent input, never a plain bad-input condition)."""


class ConsistencyError(CqsError):
    """Two independent computations of the same quantity disagree."""

    def __init__(self, message: str, **context):
        if context:
            extras = ", ".join(f"{k}={v}" for k, v in sorted(context.items()))
            message = f"{message} [{extras}]"
        super().__init__(message)
        self.context = context


class ResourceLimitError(CqsError):
    """A guarded search exceeded its configured size bound."""
