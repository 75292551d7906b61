"""Exception types shared across the package."""


class QdiagError(Exception):
    """Base class for all qdiag errors."""


class NotSquareError(QdiagError):
    """A matrix expected to be square is not."""


class HermiticityViolation(QdiagError):
    """A matrix deviates from self-adjointness beyond tolerance.

    Carries the measured max-norm deviation in ``deviation``.
    """

    def __init__(self, message, deviation=None):
        super().__init__(message)
        self.deviation = deviation


class ConvergenceFailure(QdiagError):
    """The iterative eigensolver failed; never swallowed silently."""


class DimensionMismatch(QdiagError):
    """Operands have incompatible dimensions."""


class RankDeficientBasis(QdiagError):
    """Multipole construction found fewer independent operators than a rank requires.

    This signals a construction bug, not a property of the input.
    """


class NotTuned(QdiagError):
    """A field profile fails the tuning condition, so forces would not separate beams."""


class SingularFrame(QdiagError):
    """A coherent-state frame is not informationally complete (Gram matrix singular)."""


class EmptyNullSpace(QdiagError):
    """No kernel vector exists at the given tolerance; the value is spurious or noisy."""


class HmatParseError(QdiagError):
    """Malformed HMAT input. ``line`` and ``column`` locate the offending token."""

    def __init__(self, message, line=None, column=None):
        super().__init__(message)
        self.line = line
        self.column = column


class DimensionError(QdiagError):
    """An HMAT file declares a dimension inconsistent with its contents."""
