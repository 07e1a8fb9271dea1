"""Immutable term values with a memoised structural hash."""
from dataclasses import dataclass, fields
from enum import Enum


class Side(str, Enum):
    """Which end of a boundary pair an operation reads."""
    SRC = "src"
    TGT = "tgt"

    @property
    def other(self):
        return Side.TGT if self is Side.SRC else Side.SRC


@dataclass(frozen=True, eq=False)
class Value:
    """
    Base for frozen dataclasses that nest deeply (trees, terms, cells).

    Subclasses must be declared with ``@dataclass(frozen=True, eq=False)``
    and call ``super().__post_init__()`` once their fields are final.
    The hash is computed once; equality short-circuits on identity and on
    differing hashes before comparing fields.
    """

    def __post_init__(self):
        object.__setattr__(self, "_digest", hash((type(self).__name__,) + self._astuple()))

    def _astuple(self):
        return tuple(getattr(self, f.name) for f in fields(self))

    def __hash__(self):
        return self._digest

    def __eq__(self, other):
        if self is other:
            return True
        if type(self) is not type(other) or self._digest != other._digest:
            return False
        return self._astuple() == other._astuple()

    def __ne__(self, other):
        return not self == other
