"""Exception types shared across the package."""


class QesError(Exception):
    """Base class for all qeswell errors."""


class DomainError(QesError, ValueError):
    """Evaluation point lies outside the geometry's domain."""


class UnsupportedFamilyError(QesError, ValueError):
    """Family/geometry combination has no square-integrable states."""


class DegenerateParameterError(QesError, ValueError):
    """Parameter combination hits a pole of a recurrence or weight."""


class ConvergenceError(QesError, RuntimeError):
    """An iterative solver exhausted its iteration budget."""
