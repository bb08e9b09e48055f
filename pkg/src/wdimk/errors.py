"""Exception hierarchy shared by every module."""


class WdimError(Exception):
    """Base class for all errors raised by wdimk."""


class GraphError(WdimError):
    pass


class DimensionTooSmall(GraphError):
    pass


class TooLarge(GraphError):
    pass


class Disconnected(GraphError):
    pass


class SelfLoop(GraphError):
    pass


class IndexOutOfRange(GraphError):
    pass


class NotTwoDimensionalHamming(GraphError):
    pass


class SameVertex(GraphError):
    pass


class GraphMismatch(WdimError):
    pass


class OutOfRange(WdimError):
    """A parameter lies outside the domain where a formula or construction is defined."""


class BadDims(OutOfRange):
    pass


class KExceedsKappa(WdimError):
    """No weak k-resolving set exists because k is larger than kappa(G)."""


class KTooSmallForReduction(WdimError):
    pass


class BadOrder(WdimError):
    pass


class BudgetExceeded(WdimError):
    """Search stopped early. ``best`` holds the incumbent (may be None)."""

    def __init__(self, message, best=None):
        super().__init__(message)
        self.best = best


class Infeasible(WdimError):
    pass


class ParseError(WdimError):
    def __init__(self, message, line=None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line
