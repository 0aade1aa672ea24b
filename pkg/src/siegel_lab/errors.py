"""Exception hierarchy shared by all modules."""


class SiegelLabError(Exception):
    """Base class."""


class DomainError(SiegelLabError, ValueError):
    """Argument outside the mathematical domain of an operation."""


class CapacityError(SiegelLabError):
    """Request exceeds a configured size cap or a supplied table."""


class UnsupportedError(SiegelLabError):
    """Operation not defined for this input (e.g. L(s, chi_0) at its pole)."""


class PreconditionError(SiegelLabError, ValueError):
    """A standing assumption of the proof audit is violated."""
