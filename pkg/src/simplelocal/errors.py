"""Exception types raised by simplelocal."""


class InputError(ValueError):
    """Malformed graph, seed set, or parameter supplied by the caller."""


class SeedTooLargeError(InputError):
    """The seed set has more than half of the total volume."""


class UndefinedConductanceError(ValueError):
    """Conductance requested for the empty set or the whole vertex set."""


class UndefinedScoreError(ValueError):
    """A quotient score's denominator is not positive."""


class GuaranteeNotApplicable(ValueError):
    """The preconditions of a cut-quality guarantee do not hold."""


class InternalError(RuntimeError):
    """An invariant that should be unreachable was violated."""
