"""Exception hierarchy shared by every treewalk module."""


class TreewalkError(Exception):
    """Base class for all errors raised by treewalk."""


class InvalidEdge(TreewalkError, ValueError):
    """An edge joins a vertex to itself."""


class DuplicateEdge(TreewalkError, ValueError):
    """The same unordered pair was given twice."""


class VertexOutOfRange(TreewalkError, ValueError):
    """A vertex label is outside 1..n."""


class MalformedSubgraph(TreewalkError, ValueError):
    """An edge of a subgraph has an endpoint outside the subgraph's vertex set."""


class NotConnected(TreewalkError, ValueError):
    """A derivation was requested from a disconnected graph."""


class DerivationTooLarge(TreewalkError):
    """The next derived level would exceed the configured growth cap."""

    def __init__(self, message, projected=None):
        super().__init__(message)
        self.projected = projected


class NotEquitable(TreewalkError, ValueError):
    """A quotient matrix was requested for a partition that is not equitable."""


class DimensionMismatch(TreewalkError, ValueError):
    """A matrix that must be square is not."""


class NumericalFailure(TreewalkError, ArithmeticError):
    """A floating-point decomposition failed its residual check."""


class FactorizationLimit(TreewalkError, ArithmeticError):
    """Squarefree decomposition needs trial division beyond the configured bound."""
