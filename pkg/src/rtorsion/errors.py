"""Exception types shared across the package."""


class TorsionError(ValueError):
    """Base class for mathematical precondition failures."""


class RingMismatchError(TorsionError):
    """Operands live over different coefficient rings."""


class InvalidComplexError(TorsionError):
    """A chain complex violates a structural invariant.

    ``degree`` is the first degree at which the violation was found.
    """

    def __init__(self, message, degree=None):
        super().__init__(message)
        self.degree = degree


class NonAcyclicError(TorsionError):
    """Torsion was requested for a complex with homology and no homology basis."""


class NotExactError(TorsionError):
    """A sequence of chain maps fails to be a short exact sequence."""
