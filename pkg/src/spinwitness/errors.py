"""Exception hierarchy. Each class carries the CLI exit code and a short machine code."""


class SpinWitnessError(Exception):
    exit_code = 1
    code = "ERROR"


class InvalidArgumentError(SpinWitnessError, ValueError):
    exit_code = 2
    code = "INVALID_ARGUMENT"


class CapExceededError(SpinWitnessError):
    """A configured resource cap (row count, node budget, matrix dimension) was hit."""

    exit_code = 3
    code = "CAP_EXCEEDED"


class LimitExceededError(CapExceededError):
    code = "LIMIT_EXCEEDED"


class NoJumpError(SpinWitnessError):
    exit_code = 4
    code = "NO_JUMP"


class ClusteringError(SpinWitnessError):
    code = "CLUSTERING"


class ConvergenceError(SpinWitnessError):
    code = "NON_CONVERGENCE"
