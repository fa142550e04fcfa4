"""Shared error types for file parsing and contract checks."""


class ParseError(ValueError):
    """A data file failed to parse or validate.

    Carries the 1-based line number when one is known.
    """

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
