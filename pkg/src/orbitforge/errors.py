"""Exception types shared across modules."""


class ResourceGuardError(RuntimeError):
    """A size/memory guard refused the requested computation (CLI exit 3)."""


class ClosureLimitError(ResourceGuardError):
    """Group closure exceeded its element limit."""


class InconsistencyError(RuntimeError):
    """Internal cross-check failed; indicates a bug, never bad user input."""
