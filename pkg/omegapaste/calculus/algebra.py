"""
Algebras for the weak omega-category monad L.

An algebra is a carrier of cells with an evaluation map taking an LCell
(an instruction together with a diagram of that arity) to a cell. The
derived operations (identities, binary composites, standard pastings,
coherence and unit-law cells, hom algebras) are written once against
that interface.

Instances:
    FreeAlgebra     - free (optionally marked) weak omega-category on a
                      globular set; cells are normal-form trees.
    StrictAlgebra   - TX, evaluating through the arity map.
    LCellAlgebra    - the free algebra LA on the cells of an algebra A.
    HomAlgebra      - the hom weak omega-category A(x, y).
"""
import logging
from abc import ABC, abstractmethod
from dataclasses import dataclass

from schemes.exceptions import BoundaryMismatch, DimensionOutOfRange, DimMismatch, ShapeMismatch
from schemes.globular import Cell
from schemes.strict import (
    FreeStrict,
    PastingDiagram,
    boundary_at,
    compose_along,
    diagram_boundary,
    eta_T,
    lift_diagram,
    map_T,
    mu_T,
    source_at,
    suspend_diagram,
    target_at,
    validate_diagram,
)
from schemes.pasting import delta_cases, delta_scheme
from schemes.values import Side, Value

from .cells import FORMAL_ATOMS, Composite, MarkedCarrier, free_carrier, xi
from .exceptions import (
    ArityShapeMismatch,
    NotIdentityAtSlot,
    PreconditionViolated,
    SquareDoesNotCommute,
)
from .instructions import (
    L1,
    Unit,
    binary_scheme,
    coherence_instr,
    comp_instr,
    compose_instr,
    delta_instr,
    id_instr,
    identity_on,
    instr_boundary,
    instr_diagram,
    kappa,
    mu_instr,
    sp,
    suspend_instr,
)

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class LCell(Value):
    """
    An n-cell of LX.

    Fields:
        instr (Instruction):
            An n-instruction in normal form.

        diagram (PastingDiagram):
            A diagram of carrier cells whose shape is the arity of instr.
    """
    instr: object
    diagram: PastingDiagram

    @property
    def dim(self):
        return self.instr.dim

    @property
    def arity(self):
        return self.instr.arity

    def __str__(self):
        entries = " ".join(str(c) for c in self.diagram.tops)
        return f"(xi {self.instr} ({entries}))"


def validate_lcell(instr, diagram):
    if instr.arity != diagram.shape:
        raise ArityShapeMismatch(f"instruction of arity {instr.arity} on a diagram of shape {diagram.shape}")
    return LCell(instr, diagram)


def lcell_boundary(cell, side, m=None):
    """s_m or t_m of an LCell, componentwise (m defaults to dim - 1)."""
    side = Side(side)
    m = cell.dim - 1 if m is None else m
    if not 0 <= m < cell.dim:
        raise DimensionOutOfRange(f"level {m} is outside 0..{cell.dim - 1}")
    return LCell(boundary_at(L1, cell.instr, m, side), diagram_boundary(cell.diagram, m, side))


class LCellCarrier:
    """LX as a carrier of cells."""

    def dim(self, cell):
        return cell.dim

    def source(self, cell):
        return lcell_boundary(cell, Side.SRC)

    def target(self, cell):
        return lcell_boundary(cell, Side.TGT)


LCELLS = LCellCarrier()


# ------------------------------------------------------------
# The algebra interface
# ------------------------------------------------------------
class Algebra(ABC):
    """
    A weak omega-category presented as an L-algebra.

    Subclasses set ``carrier`` and implement ``evaluate``.
    """
    carrier = None

    @abstractmethod
    def evaluate(self, lcell):
        """The structure map xi: LX -> X."""

    def dim(self, cell):
        return self.carrier.dim(cell)

    def source(self, cell):
        return self.carrier.source(cell)

    def target(self, cell):
        return self.carrier.target(cell)

    def eta_cell(self, x):
        return LCell(Unit(self.dim(x)), eta_T(self.carrier, x))

    def identity(self, x):
        """id(x): x -> x, via sp([n-1]) at dimension n."""
        n = self.dim(x) + 1
        return self.evaluate(LCell(id_instr(n), lift_diagram(eta_T(self.carrier, x), n)))

    def compose(self, u, v):
        """u composed with v along their (n-1)-boundary."""
        n = self.dim(u)
        if n == 0 or self.dim(v) != n:
            raise BoundaryMismatch(f"cannot compose {u} with {v}")
        diagram = validate_diagram(self.carrier, binary_scheme(n), (u, v))
        return self.evaluate(LCell(comp_instr(n), diagram))

    def paste(self, k, diagram):
        """The standard pasting of arity ``k``."""
        if diagram.shape != k:
            raise ShapeMismatch(f"diagram of shape {diagram.shape} cannot be pasted as {k}")
        return self.evaluate(LCell(sp(k), diagram))

    def diagram(self, shape, tops):
        return validate_diagram(self.carrier, shape, tops)

    def decompose(self, cell):
        """Some LCell evaluating to ``cell``."""
        return self.eta_cell(cell)


class FreeAlgebra(Algebra):
    """
    The free weak omega-category on a globular set, or on a marked carrier.
    """

    def __init__(self, space):
        self.carrier = free_carrier(space)

    def __repr__(self):
        return f"<FreeAlgebra {self.carrier!r}>"

    @property
    def base(self):
        return self.carrier.base

    def evaluate(self, lcell):
        validate_lcell(lcell.instr, lcell.diagram)
        return xi(lcell.instr, lcell.diagram)

    def decompose(self, cell):
        if isinstance(cell, Composite):
            return LCell(cell.head, cell.diagram)
        return self.eta_cell(cell)


class StrictAlgebra(Algebra):
    """TX as an L-algebra: an instruction acts through its arity."""

    def __init__(self, base):
        self.base = base
        self.carrier = FreeStrict(base)

    def evaluate(self, lcell):
        validate_lcell(lcell.instr, lcell.diagram)
        return mu_T(lcell.diagram)


class LCellAlgebra(Algebra):
    """
    LA for an algebra A, with structure map mu^L.

    Cells are LCells over A's carrier.
    """

    def __init__(self, base):
        self.base = base
        self.carrier = LCELLS

    def evaluate(self, lcell):
        validate_lcell(lcell.instr, lcell.diagram)
        instrs = map_T(lambda c: c.instr, lcell.diagram)
        diagrams = map_T(lambda c: c.diagram, lcell.diagram)
        return LCell(mu_instr(lcell.instr, instrs), mu_T(diagrams))

    def generator(self, x):
        """The unit eta: A -> LA."""
        return self.base.eta_cell(x)


class HomCarrier:
    """Cells of a carrier between two 0-cells, one dimension down."""

    def __init__(self, parent, x, y):
        self.parent = parent
        self.x = x
        self.y = y

    def dim(self, cell):
        return self.parent.dim(cell) - 1

    def source(self, cell):
        if self.dim(cell) == 0:
            raise DimensionOutOfRange(f"0-cell {cell} of the hom has no source")
        return self.parent.source(cell)

    def target(self, cell):
        if self.dim(cell) == 0:
            raise DimensionOutOfRange(f"0-cell {cell} of the hom has no target")
        return self.parent.target(cell)

    def __contains__(self, cell):
        return (
            self.parent.dim(cell) >= 1
            and source_at(self.parent, cell, 0) == self.x
            and target_at(self.parent, cell, 0) == self.y
        )


class HomAlgebra(Algebra):
    """The hom weak omega-category A(x, y); evaluation goes through suspension."""

    def __init__(self, parent, x, y):
        for end in (x, y):
            if parent.dim(end) != 0:
                raise DimMismatch(f"{end} is not a 0-cell")
        self.parent = parent
        self.x = x
        self.y = y
        self.carrier = HomCarrier(parent.carrier, x, y)

    def evaluate(self, lcell):
        validate_lcell(lcell.instr, lcell.diagram)
        lifted = LCell(
            suspend_instr(lcell.instr),
            suspend_diagram(lcell.diagram, self.x, self.y),
        )
        return self.parent.evaluate(lifted)


def hom_cat(algebra, x, y):
    return HomAlgebra(algebra, x, y)


# ------------------------------------------------------------
# Algebra maps
# ------------------------------------------------------------
class AlgebraMap:
    """A strict omega-functor between algebras, applied cellwise."""

    def __init__(self, domain, codomain):
        self.domain = domain
        self.codomain = codomain

    def __call__(self, cell):
        raise NotImplementedError


class IdentityMap(AlgebraMap):

    def __init__(self, algebra):
        super().__init__(algebra, algebra)

    def __call__(self, cell):
        return cell


class Relabel(AlgebraMap):
    """The functor between free algebras induced by a map of generators."""

    def __init__(self, domain, codomain, glob_map):
        super().__init__(domain, codomain)
        self.glob_map = glob_map

    def __call__(self, cell):
        if isinstance(cell, Cell):
            return self.glob_map(cell)
        if isinstance(cell, FORMAL_ATOMS):
            return type(cell)(self(cell.of))
        return Composite(cell.head, map_T(self, cell.diagram))


class Evaluation(AlgebraMap):
    """The structure map LA -> A as a strict omega-functor."""

    def __init__(self, lcell_algebra):
        super().__init__(lcell_algebra, lcell_algebra.base)

    def __call__(self, cell):
        return self.codomain.evaluate(LCell(cell.instr, cell.diagram))


def relabel_marks(carrier, glob_map):
    """The marked carrier on the codomain of ``glob_map`` with the image marks."""
    return MarkedCarrier(glob_map.codomain, {glob_map(c) for c in carrier.marks}, carrier.depth)


# ------------------------------------------------------------
# Coherence, delta and the unit law
# ------------------------------------------------------------
def coherence_lcell(src, tgt, diagram):
    """
    The cell xi(src, d) -> xi(tgt, d) from contracting two parallel
    instructions over a degenerate arity.
    """
    if src.arity != diagram.shape:
        raise ShapeMismatch(f"instruction of arity {src.arity} on a diagram of shape {diagram.shape}")
    instr = coherence_instr(src, tgt, diagram.shape)
    return LCell(instr, lift_diagram(diagram, diagram.dim + 1))


def coherence_cell(algebra, src, tgt, diagram):
    return algebra.evaluate(coherence_lcell(src, tgt, diagram))


def delta_diagram(algebra, diagram, i, variant="exact"):
    """
    Remove the full-dimensional entry ``i`` of a diagram.

    exact:  u_i must be an identity id(x); it is dropped with one
            neighbouring bottom, or replaced by x.
    plus:   needs i = r or the bottom after i below n-1; u_i is dropped
            with the bottom before it, or replaced by its source.
    minus:  needs i = 0 or the bottom before i below n-1; u_i is dropped
            with the bottom after it, or replaced by its target.
    """
    k = diagram.shape
    n = k.dim
    left, right = delta_cases(k, i)
    tops, bottoms = list(diagram.tops), list(diagram.bottoms)
    entry = tops[i]
    if variant == "exact":
        x = algebra.source(entry)
        if entry != algebra.identity(x):
            raise PreconditionViolated(f"entry {i} ({entry}) is not an identity cell")
        if left:
            del tops[i], bottoms[i - 1]
        elif right:
            del tops[i], bottoms[i]
        else:
            tops[i] = x
    elif variant == "plus":
        if i < k.rank and k.bottoms[i] >= n - 1:
            raise PreconditionViolated(f"delta plus at {i} needs a lower bottom after it")
        if left:
            del tops[i], bottoms[i - 1]
        else:
            tops[i] = algebra.source(entry)
    elif variant == "minus":
        if i > 0 and k.bottoms[i - 1] >= n - 1:
            raise PreconditionViolated(f"delta minus at {i} needs a lower bottom before it")
        if right:
            del tops[i], bottoms[i]
        else:
            tops[i] = algebra.target(entry)
    else:
        raise PreconditionViolated(f"unknown delta variant {variant!r}")
    return validate_diagram(algebra.carrier, delta_scheme(k, i), tops, bottoms)


def unit_law_lcell(algebra, cell, i):
    """
    The coherence from xi(phi, u) to xi(delta^i phi, delta^i u) when the
    entry u_i is an identity.
    """
    k = cell.arity
    n = k.dim
    if not 0 <= i <= k.rank or k.tops[i] != n:
        raise NotIdentityAtSlot(f"entry {i} of {k} is not {n}-dimensional")
    entry = cell.diagram.tops[i]
    if entry != algebra.identity(algebra.source(entry)):
        raise NotIdentityAtSlot(f"entry {i} ({entry}) is not an identity cell")
    units = [Unit(level) for level in k.tops]
    units[i] = id_instr(n)
    merged = mu_instr(cell.instr, instr_diagram(k, units))
    reduced = delta_diagram(algebra, cell.diagram, i, "exact")
    logger.debug("unit law at %d of %s", i, k)
    return coherence_lcell(merged, delta_instr(cell.instr, i), reduced)


def unit_law_cell(algebra, cell, i):
    return algebra.evaluate(unit_law_lcell(algebra, cell, i))


def lift_along_ar(src, tgt, diagram):
    """
    Fill a parallel pair of LCells over an n-diagram whose boundary they
    bound: the lift (kappa(src, tgt, shape), diagram).
    """
    n = diagram.dim
    if n == 0 or src.dim != n - 1 or tgt.dim != n - 1:
        raise SquareDoesNotCommute("the boundary pair must sit one dimension below the diagram")
    for end, side in ((src, Side.SRC), (tgt, Side.TGT)):
        if diagram_boundary(diagram, n - 1, side) != end.diagram:
            raise SquareDoesNotCommute(f"the {side.value} of the diagram is not {end.diagram}")
        if end.instr.arity != end.diagram.shape:
            raise SquareDoesNotCommute(f"{end.instr} does not have arity {end.diagram.shape}")
    return LCell(kappa(src.instr, tgt.instr, diagram.shape), diagram)


def lcell_compose(left, right):
    """Composite of two n-LCells along the (n-1)-boundary, componentwise."""
    n = left.dim
    return LCell(compose_instr(left.instr, right.instr), compose_along(left.diagram, right.diagram, n - 1))


def lcell_identity(cell):
    """id on an LCell, one dimension up."""
    n = cell.dim + 1
    return LCell(identity_on(cell.instr), lift_diagram(cell.diagram, n))


def swap_boundaries(cell):
    """kappa(t phi, s phi, ar phi) on the same diagram."""
    instr = cell.instr
    return LCell(
        kappa(instr_boundary(instr, Side.TGT), instr_boundary(instr, Side.SRC), instr.arity),
        cell.diagram,
    )
