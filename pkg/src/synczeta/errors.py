"""Exception hierarchy.

Every error carries an ``exit_code`` so the command line front end can map
failures onto its documented status codes without a lookup table.
"""


class SyncZetaError(Exception):
    exit_code = 1

    def to_json(self):
        out = {"type": type(self).__name__, "message": str(self)}
        out.update(getattr(self, "details", {}))
        return out


class InvalidInput(SyncZetaError, ValueError):
    exit_code = 2


class PreconditionFailed(SyncZetaError):
    exit_code = 4


class NotTame(SyncZetaError):
    """A synchronization count is infinite (or a matrix is singular)."""

    exit_code = 3

    def __init__(self, n=None, message=None):
        self.n = n
        self.details = {"n": n}
        super().__init__(message or f"pair is not synchronously tame at n={n}")


class ShapeMismatch(InvalidInput):
    pass


class NotZeroOne(InvalidInput):
    pass


class NotBijective(InvalidInput):
    pass


class NotMonic(InvalidInput):
    pass


class ConstantTermNonzero(InvalidInput):
    pass


class ZeroHasInfiniteOrd(InvalidInput):
    pass


class RootOfUnity(InvalidInput):
    pass


class NotNormalized(InvalidInput):
    pass


class InconsistentSignedSystem(InvalidInput):
    def __init__(self, n, value):
        self.n = n
        self.details = {"n": n, "count": str(value)}
        super().__init__(f"signed system gives negative count {value} at n={n}")


class NeedMoreTerms(PreconditionFailed):
    def __init__(self, required, supplied=None):
        self.required = required
        self.details = {"required": required}
        super().__init__(f"need at least {required} terms, got {supplied}")


class HorizonTooSmall(PreconditionFailed):
    def __init__(self, required, horizon=None):
        self.required = required
        self.details = {"required": required}
        super().__init__(f"period detection needs horizon {required}, have {horizon}")


class NotCommuting(PreconditionFailed):
    pass


class RequiresRationalZeta(PreconditionFailed):
    pass


class HypothesisViolated(PreconditionFailed):
    pass


class NotHyperbolic(PreconditionFailed):
    pass


class TorsionUndefined(PreconditionFailed):
    pass


class NonIntegralCount(SyncZetaError, AssertionError):
    """Raised when a count that must be an integer is not; signals a bug."""
