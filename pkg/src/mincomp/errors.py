class SubstitutionError(ValueError):
    """Malformed or unsupported substitution input."""


class PreconditionError(ValueError):
    """Valid input on which the requested computation is undefined."""


class InternalInvariantError(RuntimeError):
    """A structural property that must always hold was violated."""


class BudgetExceeded(RuntimeError):
    """Brute-force work exceeded the configured letter budget.

    ``partial`` carries whatever was collected before stopping.
    """

    def __init__(self, message, partial=None):
        super().__init__(message)
        self.partial = partial
