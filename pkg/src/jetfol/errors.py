"""Exception hierarchy shared by every module.

The CLI maps the three families onto distinct exit codes, so callers raise
the most specific subclass they can.
"""


class JetfolError(Exception):
    """Base class for all errors raised by the package."""

    exit_code = 1


class UserInputError(JetfolError):
    """Malformed or inconsistent input supplied by the caller."""

    exit_code = 2


class ParseError(UserInputError):
    def __init__(self, message: str, line: int = 1, column: int = 1):
        super().__init__(f"{message} (line {line}, column {column})")
        self.line = line
        self.column = column


class ContextMismatchError(UserInputError):
    pass


class UnknownVariableError(UserInputError):
    pass


class DimensionMismatchError(UserInputError):
    pass


class NotDivisibleError(JetfolError):
    """Raised by exact division when the divisor does not divide."""


class ResourceLimitError(JetfolError):
    """A Groebner computation exceeded its step budget."""

    exit_code = 3


class UnsupportedError(JetfolError):
    """The construct is valid but outside what the toolkit computes."""

    exit_code = 4
