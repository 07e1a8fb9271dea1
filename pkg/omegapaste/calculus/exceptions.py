from schemes.exceptions import OmegaError


class DimZero(OmegaError):
    pass


class NotParallel(OmegaError):
    pass


class ArityMismatch(OmegaError):
    pass


class ArityShapeMismatch(OmegaError):
    pass


class PreconditionViolated(OmegaError):
    pass


class NotIdentityAtSlot(OmegaError):
    pass


class MarkDimZero(OmegaError):
    pass


class SquareDoesNotCommute(OmegaError):
    pass


class UnknownAtom(OmegaError):
    """A formal atom was requested beyond the carrier's depth."""
