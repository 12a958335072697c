"""Exception types shared across the package."""


class A4FieldsError(Exception):
    """Base class for all package errors."""


class NotPrime(A4FieldsError):
    pass


class ZeroPolynomial(A4FieldsError):
    pass


class Reducible(A4FieldsError):
    pass


class ZeroElement(A4FieldsError):
    pass


class BadConductor(A4FieldsError):
    pass


class BoundTooLarge(A4FieldsError):
    pass


class WrongClassGroup(A4FieldsError):
    pass


class ExhaustedCandidates(A4FieldsError):
    """No candidate square class works; this would contradict the class
    field theory existence argument and therefore signals a bug."""


class NotASquare(A4FieldsError):
    pass


class NotA4Input(A4FieldsError):
    pass


class UnsupportedDegree(A4FieldsError):
    pass


class NonCommuting(A4FieldsError):
    pass


class InvalidLift(A4FieldsError):
    pass


class NonCyclicHypothesis(A4FieldsError):
    """The narrow 2-part is not cyclic, so the class-parity shortcut does
    not apply.  Detected and reported, never assumed away."""


class MethodDisagreement(A4FieldsError):
    """The lift-counting and class-parity computations of the invariant
    disagree: an implementation bug or a falsified hypothesis."""


class ExcludedPrime(A4FieldsError):
    pass


class InsufficientData(A4FieldsError):
    pass


class CertificationFailure(A4FieldsError):
    """A certification step could neither verify nor refute a claim within
    its effort budget.  Raised loudly instead of guessing."""
