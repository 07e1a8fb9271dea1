"""
Error hierarchy shared by every omegapaste app.

Each error carries a stable ``code`` so that serializers and the command
line can report it without string matching.
"""
import re


class OmegaError(Exception):
    """
    Root of every domain error raised by the engine.

    Attributes:
        code (str):
            snake_case form of the class name, e.g. ``zigzag_violation``.
    """

    def __init__(self, message=""):
        super().__init__(message or self.__class__.__name__)
        self.message = message or self.__class__.__name__

    @property
    def code(self):
        return re.sub(r"(?<!^)(?=[A-Z])", "_", self.__class__.__name__).lower()


# ------------------------------------------------------------
# Pasting schemes and their encodings
# ------------------------------------------------------------
class LengthMismatch(OmegaError):
    pass


class NegativeEntry(OmegaError):
    pass


class ZigzagViolation(OmegaError):
    pass


class MalformedEncoding(OmegaError):
    pass


class DimensionOutOfRange(OmegaError):
    pass


class NotFullDimensional(OmegaError):
    pass


# ------------------------------------------------------------
# Globular sets
# ------------------------------------------------------------
class DanglingBoundary(OmegaError):
    pass


class GlobularityViolation(OmegaError):
    pass


class DimMismatch(OmegaError):
    pass


# ------------------------------------------------------------
# Pasting diagrams
# ------------------------------------------------------------
class ShapeMismatch(OmegaError):
    pass


class BoundaryMismatch(OmegaError):
    pass
