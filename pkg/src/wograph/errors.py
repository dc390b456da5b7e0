"""Exception types shared across the package."""


class WographError(Exception):
    """Base class for all package-specific errors."""


class StructureError(WographError):
    """Malformed graph data: self-loops, antiparallel arc pairs, bad weights,
    arcs touching unknown vertices, or component structures that are not
    subgraphs of the host graph."""


class UnknownVertexError(WographError, KeyError):
    """A vertex id was looked up that the graph does not contain."""

    def __str__(self):  # KeyError quotes its payload; keep the message plain
        return Exception.__str__(self)


class PreconditionError(WographError, ValueError):
    """An operation was called on arguments outside its documented domain
    (e.g. a set that is not a vertex cover, or a non-induced 5-cycle)."""


class CapacityError(WographError):
    """The instance exceeds a configured exhaustive-search bound."""


class ConsistencyError(WographError):
    """Two routes that must agree disagreed.

    Raised when independently computed answers (decider vs. oracle, or the
    two halves of a proved equivalence) differ. Always a bug in this package
    or a transcription error in its sources; never swallowed.
    """

    def __init__(self, message, details=None):
        super().__init__(message)
        self.details = details


class GenerationError(WographError):
    """The random generator exhausted its retry budget for a constraint."""


class DocumentError(WographError, ValueError):
    """A graph document failed to parse; carries line/column when known."""

    def __init__(self, message, line=None, column=None):
        if line is not None:
            message = f"{message} (line {line}, column {column})"
        super().__init__(message)
        self.line = line
        self.column = column
