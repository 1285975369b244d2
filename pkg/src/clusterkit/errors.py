"""Exception hierarchy shared by all clusterkit modules."""


class ClusterKitError(Exception):
    """Base class for all errors raised by this package."""


class InvariantViolation(ClusterKitError):
    """A structural precondition or invariant was violated (CLI exit code 4)."""


class ContextMismatch(InvariantViolation):
    """Operands belong to different ambient variable contexts."""


class FrozenVertexError(InvariantViolation):
    """Mutation was requested at a frozen (non-mutable) vertex."""


class NotBipartiteError(InvariantViolation):
    """Quiver product requires every vertex to be a source or a sink."""


class NotSimplyLacedError(InvariantViolation):
    """Operation is only defined for simply-laced (A, D, E) diagrams."""


class NotSkewSymmetrizableError(InvariantViolation):
    """Matrix admits no positive integer skew-symmetrizer."""


class InvalidTriangulationError(InvariantViolation):
    """Diagonal set does not describe a triangulation."""


class NotADiagonalError(InvariantViolation):
    """Flip was requested at a chord that is not part of the triangulation."""


class SelfFoldedUnsupportedError(InvariantViolation):
    """Abstract triangulations with self-folded triangles are not supported."""


class NotQuiverPeriodicError(InvariantViolation):
    """Composed mutation sequence does not map the quiver to itself."""


class NonCommutingBlockError(InvariantViolation):
    """A mutation block's result depends on the order within the block."""


class BudgetExceededError(ClusterKitError):
    """An enumeration or iteration exceeded its configured budget (CLI exit code 3)."""


class ParseError(ClusterKitError):
    """Malformed textual input (CLI exit code 2)."""
