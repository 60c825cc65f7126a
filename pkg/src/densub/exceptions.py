"""Exception types raised by densub."""


class GraphValidationError(ValueError):
    """Input graph or argument violates a documented precondition."""


class EdgeListParseError(GraphValidationError):
    """A line of an edge-list file could not be parsed."""

    def __init__(self, lineno, line, reason):
        self.lineno = lineno
        self.line = line
        super().__init__(f"line {lineno}: {reason}: {line!r}")


class GraphTooLargeError(GraphValidationError):
    """Exhaustive oracle requested on a graph beyond its size limit."""
