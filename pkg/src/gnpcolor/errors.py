"""Exception types shared across the package."""


class ParameterError(ValueError):
    """Invalid algorithm parameters (e.g. d <= 0 or d >= n)."""


class InvalidEdgeError(ValueError):
    """An edge argument is not present in the graph."""


class ContractViolationError(ValueError):
    """A precondition on a coloring/color argument was violated."""


class InfeasibleError(RuntimeError):
    """No proper coloring exists under the given color budget."""


class GuardExceededError(RuntimeError):
    """An exhaustive-enumeration size guard was exceeded."""


class GraphFormatError(ValueError):
    """A graph file failed to parse or violated the format contract."""
