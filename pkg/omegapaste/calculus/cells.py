"""
Cells of free and marked weak omega-categories.

A cell is either a generator (a ``schemes.globular.Cell``), a formal
atom supplying invertibility data for a marked cell, or a composite
``xi(kappa, d)`` of a contraction cell with a diagram of cells. Every
cell is kept in tree normal form: the head of a composite is always a
contraction cell, and unit instructions evaluate to the entry itself.
Equality of cells is syntactic.
"""
import logging
import threading
from dataclasses import dataclass

from schemes.exceptions import DimensionOutOfRange
from schemes.globular import Cell, GlobularSet
from schemes.strict import (
    PastingDiagram,
    cut,
    diagram_boundary,
    eta_T,
    lift_diagram,
    map_T,
    validate_diagram,
    zip_layers,
)
from schemes.values import Side, Value

from .exceptions import MarkDimZero, UnknownAtom
from .instructions import (
    Contract,
    Unit,
    arity,
    binary_scheme,
    comp_instr,
    id_instr,
)

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class FormalInv(Value):
    """The formal inverse of ``of``: t(of) -> s(of)."""
    of: object

    def __str__(self):
        return f"(inv {self.of})"


@dataclass(frozen=True, eq=False)
class FormalP(Value):
    """comp(of, inv of) -> id(s of)."""
    of: object

    def __str__(self):
        return f"(p {self.of})"


@dataclass(frozen=True, eq=False)
class FormalQ(Value):
    """comp(inv of, of) -> id(t of)."""
    of: object

    def __str__(self):
        return f"(q {self.of})"


FORMAL_ATOMS = (FormalInv, FormalP, FormalQ)


@dataclass(frozen=True, eq=False)
class Composite(Value):
    """
    The evaluation of a contraction cell on a diagram of cells.

    Fields:
        head (Contract):
            The instruction; its arity is the shape of ``diagram``.

        diagram (PastingDiagram):
            Entries are cells in tree normal form.
    """
    head: Contract
    diagram: PastingDiagram

    @property
    def dim(self):
        return self.head.dim

    def __str__(self):
        entries = " ".join(str(c) for c in self.diagram.tops)
        n = self.head.dim
        if self.head == id_instr(n):
            return f"(id {entries})"
        if self.head == comp_instr(n):
            return f"(comp {entries})"
        return f"(xi {self.head} ({entries}))"


def xi(instr, diagram):
    """
    Evaluate a normal-form instruction on a diagram of cells.

    Substitutions are pushed into the entries, so the result is again in
    tree normal form.
    """
    if isinstance(instr, Unit):
        return diagram.top()
    if isinstance(instr, Contract):
        return Composite(instr, diagram)
    pieces = cut(map_T(arity, instr.args), diagram)
    frame = zip_layers(instr.args.frame, pieces.frame, xi)
    return Composite(instr.head, PastingDiagram(frame, instr.args.dim))


def support(cell):
    """The generators occurring in a cell term."""
    if isinstance(cell, Cell):
        return frozenset((cell,))
    if isinstance(cell, FORMAL_ATOMS):
        return support(cell.of)
    found = frozenset()
    for entry in cell.diagram.tops:
        found |= support(entry)
    return found


class MarkedCarrier:
    """
    The cells of the free weak omega-category on ``base`` with formal
    invertibility data for the marked cells.

    Fields:
        base (GlobularSet):
            The generators.

        marks (frozenset[Cell]):
            Generators of dimension >= 1 that receive formal atoms.

        depth (int):
            A marked generator gets atoms whose own atoms reach ``depth``
            levels: depth 1 yields inv f, p f and q f; depth 2 adds the
            atoms of p f and q f.

    Methods:
        atoms(cell):
            The triple (inverse, p, q) a cell carries formally.

        identity(x) / compose(u, v):
            The evaluated id and binary composite.
    """

    def __init__(self, base, marks=(), depth=0):
        self.base = base
        self.depth = depth
        self.marks = frozenset(marks)
        for cell in self.marks:
            if cell not in base:
                raise UnknownAtom(f"mark {cell} is not a cell of the base")
            if cell.dim == 0:
                raise MarkDimZero(f"0-cell {cell} cannot be marked invertible")
        self._boundaries = {}
        self._lock = threading.Lock()

    def __repr__(self):
        return f"<MarkedCarrier marks={len(self.marks)} depth={self.depth} over {self.base!r}>"

    # ---- formal atoms -------------------------------------------------------
    def level(self, cell):
        """How many witness levels the formal atoms of ``cell`` supply (-1: none)."""
        if isinstance(cell, Cell):
            return self.depth - 1 if cell in self.marks else -1
        if isinstance(cell, FormalInv):
            return self.level(cell.of)
        if isinstance(cell, (FormalP, FormalQ)):
            return self.level(cell.of) - 1
        return -1

    def _owner(self, atom):
        owner = atom.of
        if isinstance(owner, FormalInv) or self.level(owner) < 0:
            raise UnknownAtom(f"{atom} is not generated at depth {self.depth}")
        return owner

    def atoms(self, cell):
        if self.level(cell) < 0:
            raise UnknownAtom(f"{cell} carries no formal inverse")
        if isinstance(cell, FormalInv):
            owner = self._owner(cell)
            return owner, FormalQ(owner), FormalP(owner)
        return FormalInv(cell), FormalP(cell), FormalQ(cell)

    def has_atoms(self, cell):
        return self.level(cell) >= 0

    # ---- carrier protocol ---------------------------------------------------
    def dim(self, cell):
        if isinstance(cell, Cell):
            return cell.dim
        if isinstance(cell, FormalInv):
            return self.dim(self._owner(cell))
        if isinstance(cell, (FormalP, FormalQ)):
            return self.dim(self._owner(cell)) + 1
        return cell.head.dim

    def source(self, cell):
        return self._boundary(cell, Side.SRC)

    def target(self, cell):
        return self._boundary(cell, Side.TGT)

    def _boundary(self, cell, side):
        if isinstance(cell, Cell):
            return self.base.source(cell) if side is Side.SRC else self.base.target(cell)
        key = (cell, side)
        with self._lock:
            if key in self._boundaries:
                return self._boundaries[key]
        face = self._compute_boundary(cell, side)
        with self._lock:
            self._boundaries.setdefault(key, face)
        return face

    def _compute_boundary(self, cell, side):
        if isinstance(cell, Composite):
            n = cell.head.dim
            if n == 0:
                raise DimensionOutOfRange(f"0-cell {cell} has no {side.value}")
            head = cell.head.src if side is Side.SRC else cell.head.tgt
            return xi(head, diagram_boundary(cell.diagram, n - 1, side))
        owner = self._owner(cell)
        if isinstance(cell, FormalInv):
            return self._boundary(owner, side.other)
        inverse = FormalInv(owner)
        if isinstance(cell, FormalP):
            if side is Side.SRC:
                return self.compose(owner, inverse)
            return self.identity(self.source(owner))
        if side is Side.SRC:
            return self.compose(inverse, owner)
        return self.identity(self.target(owner))

    # ---- evaluated structure ------------------------------------------------
    def identity(self, x):
        n = self.dim(x) + 1
        return xi(id_instr(n), lift_diagram(eta_T(self, x), n))

    def compose(self, u, v):
        n = self.dim(u)
        return xi(comp_instr(n), validate_diagram(self, binary_scheme(n), (u, v)))


def extend_with_marks(space, marks=(), depth=1):
    """
    The marked carrier over ``space``; ``marks`` are cells or names.

    With no marks (or depth 0) this is the plain free carrier.
    """
    resolved = []
    for mark in marks:
        if isinstance(mark, Cell):
            resolved.append(mark)
            continue
        matches = [c for c in space if c.name == str(mark)]
        if not matches:
            raise UnknownAtom(f"no cell named {mark!r} to mark")
        resolved.extend(matches)
    carrier = MarkedCarrier(space, resolved, depth)
    logger.debug("marked carrier with %d marks at depth %d", len(resolved), depth)
    return carrier


def free_carrier(space):
    if isinstance(space, MarkedCarrier):
        return space
    if not isinstance(space, GlobularSet):
        raise TypeError(f"cannot build a free carrier over {space!r}")
    return MarkedCarrier(space)

