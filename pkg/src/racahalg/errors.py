"""Exception types shared across the package."""


class RacahError(Exception):
    """Base class for all errors raised by racahalg."""


class PoleError(RacahError, ZeroDivisionError):
    """A denominator Pochhammer symbol or rational coefficient vanished."""


class ValidityError(RacahError, ValueError):
    """A parameter pack places a pole on the grid or violates positivity."""


class ClosureError(RacahError):
    """A stencil has a nonzero coefficient pointing off the grid."""


class DimensionError(RacahError, ValueError):
    """Matrix operands have incompatible shapes."""


class SingularError(RacahError):
    """A value table is not invertible."""


class NonDiagonalizableError(RacahError):
    """No diagonal weight makes the value table orthogonal."""


class SuiteFailure(RacahError):
    """At least one relation failed in both its printed and corrected form."""
