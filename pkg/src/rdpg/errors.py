class ParameterError(ValueError):
    """Raised when an argument violates an operation's precondition."""


class InvariantError(ValueError):
    """Raised when a data object fails one of its structural invariants."""


class NumericalError(ArithmeticError):
    """Raised when a numerical routine fails (e.g. eigensolver non-convergence)."""
