"""Exception hierarchy. Every error is a ``ValueError`` so callers can catch broadly."""


class CoherentKitError(ValueError):
    """Base class for all package errors."""


class InvalidDimension(CoherentKitError):
    pass


class ContractViolation(CoherentKitError):
    pass


class TruncationError(CoherentKitError):
    """Raised when a truncated Fock space is too small for the requested parameter."""

    def __init__(self, message, suggested_dim=None):
        super().__init__(message)
        self.suggested_dim = suggested_dim


class InvalidGrid(CoherentKitError):
    pass


class InvalidParameter(CoherentKitError):
    pass


class MismatchError(CoherentKitError):
    pass


class SingularParameter(CoherentKitError):
    pass


class OutsideDomain(CoherentKitError):
    def __init__(self, message, det=None):
        super().__init__(message)
        self.det = det


class PoleError(CoherentKitError):
    pass


class PreconditionError(CoherentKitError):
    pass


class InconclusiveError(CoherentKitError):
    def __init__(self, message, distances=None):
        super().__init__(message)
        self.distances = distances


class InvalidElement(CoherentKitError):
    pass
