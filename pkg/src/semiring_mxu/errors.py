"""Exception types raised across the package."""


class SemiringError(Exception):
    """Base class for all package errors."""


class DomainError(SemiringError, ValueError):
    """A value lies outside the value domain of the active operation."""


class ShapeError(SemiringError, ValueError):
    pass


class AliasError(SemiringError, ValueError):
    """An mmo input operand shares memory with the output buffer."""


class NonConvergence(SemiringError, RuntimeError):
    """A closure iteration was still changing when ``max_iter`` was reached.

    ``result`` holds the last iterate (a ``ClosureResult`` with
    ``converged=False``) when available.
    """

    def __init__(self, message, result=None):
        super().__init__(message)
        self.result = result


class DagRequired(SemiringError, ValueError):
    pass


class DistinctWeightsRequired(SemiringError, ValueError):
    """MSF edge extraction needs pairwise distinct weights.

    The bottleneck closure is still available as ``result``.
    """

    def __init__(self, message, result=None):
        super().__init__(message)
        self.result = result


class ParseError(SemiringError, ValueError):
    def __init__(self, message, line=None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


class EdgeIndexError(ParseError, IndexError):
    """Vertex index in an edge list is out of range."""


class ConfigError(SemiringError, ValueError):
    pass
