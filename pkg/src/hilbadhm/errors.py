"""Exception hierarchy. Each class carries the CLI exit code it maps to."""


class HilbAdhmError(Exception):
    exit_code = 2


class ParseError(HilbAdhmError, ValueError):
    exit_code = 1

    def __init__(self, message, position=None, text=None):
        self.position = position
        self.text = text
        if position is not None:
            message = f"{message} (at position {position})"
        super().__init__(message)


class DomainError(HilbAdhmError, ValueError):
    """A precondition on the mathematical input is violated."""

    exit_code = 2


class DimensionMismatch(DomainError):
    pass


class SingularMatrixError(DomainError):
    pass


class NotZeroDimensionalError(DomainError):
    pass


class ImproperIdealError(DomainError):
    pass


class MissingGroebnerBasis(DomainError):
    pass


class IrrationalEigenvalueError(DomainError):
    def __init__(self, message, factor=None):
        self.factor = factor
        super().__init__(message)


class NonCommutingError(HilbAdhmError):
    exit_code = 3

    def __init__(self, pair):
        self.pair = pair
        super().__init__(f"B_{pair[0]} and B_{pair[1]} do not commute")


class UnstableError(HilbAdhmError):
    exit_code = 4

    def __init__(self, rank, c):
        self.rank = rank
        self.c = c
        super().__init__(f"datum is not stable: krylov rank {rank} of {c}")


class ClusteringAmbiguityError(HilbAdhmError):
    exit_code = 5
