"""Exception types shared across the package."""


class GraphError(Exception):
    """Base class for all steffenlab errors."""


class LoopRejected(GraphError):
    """An edge with equal endpoints was supplied; loops are not allowed."""


class VertexOutOfRange(GraphError):
    """A vertex index fell outside 0..n-1."""


class NonPositiveMultiplicity(GraphError):
    """An edge multiplicity was zero or negative."""


class NotEnoughParallelEdges(GraphError):
    """Asked to remove more parallel copies than a pair has."""


class ParseError(GraphError):
    """Malformed MGR text.  Carries the 1-based line number."""

    def __init__(self, message: str, line: int):
        super().__init__(f"line {line}: {message}")
        self.line = line


class CoverageMismatch(GraphError):
    """A coloring does not cover exactly the edge copies of the graph."""


class InstanceTooLarge(GraphError):
    """Input exceeds the configured exhaustive-enumeration cap."""


class NotShortestCycle(GraphError):
    """The supplied cycle is not a shortest cycle of the given subgraph."""


class VertexNotInV0(GraphError):
    """Fan apex must lie in the acyclic remainder of the cycle partition."""


class BadParameter(GraphError):
    """Invalid generator parameter."""


class PreconditionFailed(GraphError):
    """A checked operation precondition does not hold.

    `clause` names the violated hypothesis, e.g. "n-odd" or "critical".
    """

    def __init__(self, clause: str, message: str = ""):
        super().__init__(f"{clause}: {message}" if message else clause)
        self.clause = clause


class SolverTimeout(GraphError):
    """A single (graph, k) colorability decision exceeded its time budget."""


class ConfigError(GraphError):
    """Invalid scan or suite configuration."""
