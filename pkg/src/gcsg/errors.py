class GCSGError(Exception):
    """Base class for solver errors."""


class GraphFormatError(GCSGError, ValueError):
    """Malformed graph, structure, valuation or CNF input."""


class DisconnectedGraphError(GCSGError, ValueError):
    pass


class GraphClassError(GCSGError, ValueError):
    """Input graph is outside the class an algorithm requires."""


class CapExceededError(GCSGError):
    """An exhaustive routine was asked to run beyond its size cap."""


class BudgetExceededError(GCSGError):
    """A solver ran past its configured node or time budget."""
