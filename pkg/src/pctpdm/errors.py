"""Exception hierarchy shared by every module in the package."""


class PCTError(Exception):
    """Base class for all package errors."""


class DomainError(PCTError, ValueError):
    """Argument is not finite or otherwise outside the function's domain."""


class RangeError(PCTError, ValueError):
    """Value lies outside the range of a coordinate mapping."""


class SingularityError(PCTError, ArithmeticError):
    """A potential was evaluated on one of its poles."""


class BoundStateIndexError(PCTError, IndexError):
    """Requested level exceeds the number of bound states."""


class UnsupportedError(PCTError, NotImplementedError):
    """No closed form is available for the requested family."""


class DegenerateParameterError(PCTError, ValueError):
    """Parameters make a recurrence coefficient or a norm vanish."""


class BracketError(PCTError, ValueError):
    """The root-finding interval does not bracket a sign change."""


class ConvergenceError(PCTError, RuntimeError):
    """An iterative numerical method did not converge."""


class ConfigError(PCTError, ValueError):
    """Invalid run configuration."""
