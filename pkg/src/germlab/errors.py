"""Exception types shared across the package.

Every error raised deliberately by germlab derives from :class:`GermlabError`,
so callers (in particular the CLI driver) can map failures to exit codes
without ever matching on message strings from third parties.
"""


class GermlabError(Exception):
    """Base class for all errors raised by germlab."""


class ParseError(GermlabError):
    """Malformed input text.  Always carries a 1-based line and column."""

    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"line {line}, column {column}: {message}")
        self.message = message
        self.line = line
        self.column = column


class PreconditionError(GermlabError):
    """A documented precondition or theorem hypothesis does not hold."""


class ResourceLimitError(GermlabError):
    """A configured resource guard (degree or basis size) was exceeded."""
