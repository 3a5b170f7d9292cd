"""Exception types shared across the package."""


class InputError(ValueError):
    """Raised when an argument violates an operation's preconditions."""


class ParseError(InputError):
    """Raised when a file or config string cannot be parsed."""


class DegenerateDataWarning(UserWarning):
    """Emitted when an operation falls back to a degenerate-data convention."""
