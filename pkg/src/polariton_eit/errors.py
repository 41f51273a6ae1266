"""Exception types shared across the package.

Everything raised on purpose derives from PolaritonError so callers can
catch one base class at the boundary (the command line driver does) and
still discriminate when they need to.
"""


class PolaritonError(Exception):
    """Base class for all errors raised by this package."""


class StabilityViolation(PolaritonError):
    """Coupling at or beyond the bound where the lower branch softens to zero."""


class IndexOutOfRange(PolaritonError):
    """A mode index or excitation number outside the valid range."""


class NotHermitian(PolaritonError):
    """An operator expected to be Hermitian is not, beyond tolerance."""


class ShapeMismatch(PolaritonError):
    """Operands built on different mode layouts were combined."""


class StepUnderflow(PolaritonError):
    """Time integration could not meet the accuracy target."""


class DegenerateDark(PolaritonError):
    """Both couplings that define the dark superposition vanish."""


class ScheduleNotMonotone(PolaritonError):
    """A control schedule required to decrease monotonically does not."""


class SingularResponse(PolaritonError):
    """The response denominator vanished; no steady state at this drive."""


class NotConverged(PolaritonError):
    """An iterative or time-domain calculation missed its tolerance."""


class NoWindowFound(PolaritonError):
    """No transparency minimum with rising flanks inside the scanned range."""
