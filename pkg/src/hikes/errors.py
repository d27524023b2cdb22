"""Exception types shared across the package."""


class HikeError(Exception):
    """Base class for every error raised by this package."""


class GraphFormatError(HikeError, ValueError):
    """Problem in a graph file."""

    def __init__(self, line, reason):
        self.line = line
        self.reason = reason
        super().__init__(f"line {line}: {reason}")


class ParseError(GraphFormatError):
    pass


class DuplicateEdge(GraphFormatError):
    pass


class VertexOutOfRange(GraphFormatError):
    pass


class HikeLiteralError(HikeError, ValueError):
    pass


class NotAHikeError(HikeError, ValueError):
    pass


class NotClosedError(HikeError, ValueError):
    pass


class EmptyHikeError(HikeError, ValueError):
    pass


class DimensionTooLarge(HikeError, ValueError):
    pass


class InexactDivision(HikeError, ArithmeticError):
    """A trace-recursion division left a remainder; always an internal bug."""


class GuardViolation(HikeError, ValueError):
    """Input exceeds the desk-scale limits and no override was given."""
