"""Exception types shared by the library and the command line."""


class InputError(ValueError):
    """Malformed or unresolvable input (shapes, names, parse failures)."""


class PreconditionError(ValueError):
    """A hypothesis required by a construction does not hold for the given data."""


class InternalConsistencyError(AssertionError):
    """Two independent computations of the same quantity disagree."""
