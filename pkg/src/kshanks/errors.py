"""Exception hierarchy shared by every module."""


class ShanksError(Exception):
    """Base class for all errors raised by kshanks."""


class DomainError(ShanksError, ValueError):
    """An argument lies outside the domain of the operation."""


class CeilingExceeded(ShanksError):
    """An iteration or factoring ceiling was hit before the computation finished."""


class FactorizationStalled(CeilingExceeded):
    """Trial division reached its ceiling with an unfactored cofactor left."""

    def __init__(self, n, cofactor, ceiling):
        super().__init__(f"factorization of {n} stalled at cofactor {cofactor} (ceiling {ceiling})")
        self.n = n
        self.cofactor = cofactor
        self.ceiling = ceiling


class InternalInconsistency(ShanksError):
    """Two routes that must agree did not."""


class ExactDivisionFailed(InternalInconsistency):
    pass


class HypothesisViolation(ShanksError):
    """k fails the admissibility hypotheses (k = 3 mod 9, or the reduced discriminant is not squarefree)."""

    def __init__(self, k, reasons):
        self.k = k
        self.reasons = list(reasons)
        super().__init__(f"k={k} inadmissible: {', '.join(self.reasons)}")


class TheoremViolation(ShanksError):
    """A computed record contradicts one of the verified equivalences."""


class CheckpointError(ShanksError):
    def __init__(self, path, offset, detail):
        super().__init__(f"checkpoint {path} unusable at byte offset {offset}: {detail}")
        self.path = path
        self.offset = offset
