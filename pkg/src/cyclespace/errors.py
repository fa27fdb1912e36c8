"""Exception types raised across the package."""


class CycleSpaceError(Exception):
    """Base class for all package errors."""


class GraphError(CycleSpaceError, ValueError):
    pass


class DisconnectedGraph(GraphError):
    pass


class SelfLoop(GraphError):
    pass


class ParallelEdge(GraphError):
    pass


class NonpositiveWeight(GraphError):
    pass


class InvalidMetric(GraphError):
    pass


class UnsupportedParameter(CycleSpaceError, ValueError):
    pass


class SizeCapExceeded(CycleSpaceError):
    pass


class DependentBasis(CycleSpaceError, ValueError):
    pass


class NotAnAutomorphism(CycleSpaceError, ValueError):
    pass


class NotClosed(CycleSpaceError, ValueError):
    pass


class GroupNotEnumerated(CycleSpaceError):
    pass


class UnbalancedProblem(CycleSpaceError, ValueError):
    pass


class NotProbability(CycleSpaceError, ValueError):
    pass


class IdentityViolation(CycleSpaceError, AssertionError):
    """A proven identity failed to hold; indicates an implementation bug."""


class LpError(CycleSpaceError):
    pass
