"""Exception types shared across the library."""


class InputError(ValueError):
    """An argument violated a documented precondition and was rejected."""


class NumericalError(RuntimeError):
    """An internal numerical routine failed to reach its tolerance."""
