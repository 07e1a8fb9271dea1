from schemes.exceptions import OmegaError


class MissingInverseAssignment(OmegaError):
    """A full-dimensional label has no known inverse."""


class DepthExhausted(OmegaError):
    pass


class NotDegenerate(OmegaError):
    pass


class NotInversesOfSameCell(OmegaError):
    pass


class InvalidWitness(OmegaError):
    """A witness failed its boundary equations and was not stored."""
