"""Exception types shared across the package."""


class InvalidArgument(ValueError):
    """An argument violates a documented precondition."""


class OracleScaleExceeded(InvalidArgument):
    """Input too long for the exponential brute-force oracle."""


class UnfilledMatrixError(RuntimeError):
    """Outputs requested from a matrix whose interior has not been computed."""


class FastaError(ValueError):
    """Malformed FASTA input. ``line`` is 1-based when known."""

    def __init__(self, message, line=None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line
