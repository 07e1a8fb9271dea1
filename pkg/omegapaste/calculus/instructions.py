"""
Pasting instructions: the cells of L1.

Terms are built from units, contraction cells and substitution. Every
constructor in this module returns a normal form:

  * no substitution has a unit head or only units as arguments;
  * a substitution head is always a contraction cell (nested
    substitutions are grafted together).

Equality of instructions is structural equality of normal forms.
"""
import logging
from dataclasses import dataclass
from functools import cached_property, lru_cache

from schemes.exceptions import DimensionOutOfRange, ShapeMismatch
from schemes.pasting import (
    PastingScheme,
    SchemeCell,
    column,
    delta_scheme,
    lift_dim,
    scheme_boundary,
    suspend_scheme,
)
from schemes.strict import (
    PastingDiagram,
    cut,
    diagram_boundary,
    eta_T,
    lift_diagram,
    map_T,
    mu_shape,
    suspend_diagram,
    validate_diagram,
    zip_layers,
)
from schemes.values import Side, Value

from .exceptions import ArityMismatch, DimZero, NotParallel

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class Unit(Value):
    """The unit instruction of dimension n, of arity [n]."""
    n: int

    @property
    def dim(self):
        return self.n

    @property
    def arity(self):
        return column(self.n)

    def __str__(self):
        return f"(e {self.n})"


@dataclass(frozen=True, eq=False)
class Contract(Value):
    """
    A contraction cell src -> tgt of arity ``arity``.

    Fields:
        src, tgt (Instruction):
            Parallel (n-1)-instructions whose arity is the (n-1)-boundary
            of ``arity``.

        arity (SchemeCell):
            An n-dimensional scheme cell.
    """
    src: object
    tgt: object
    arity: SchemeCell

    @property
    def dim(self):
        return self.arity.dim

    def __str__(self):
        if self == sp(self.arity):
            return f"(sp {self.arity})"
        return f"(kappa {self.src} {self.tgt} {self.arity})"


@dataclass(frozen=True, eq=False)
class Subst(Value):
    """
    Substitution of the instructions in ``args`` into ``head``.

    ``args`` is a pasting diagram in L1 whose shape is the arity of head.
    """
    head: object
    args: PastingDiagram

    @property
    def dim(self):
        return self.head.dim

    @cached_property
    def arity(self):
        return mu_shape(map_T(arity, self.args))

    def __str__(self):
        # bottoms are implied by the head's arity
        entries = " ".join(str(t) for t in self.args.tops)
        return f"(mu {self.head} ({entries}))"


def arity(term):
    return term.arity


def is_unit(term):
    return isinstance(term, Unit)


class InstructionCarrier:
    """L1 as a carrier of cells for pasting diagrams."""

    def dim(self, term):
        return term.dim

    def source(self, term):
        return instr_boundary(term, Side.SRC)

    def target(self, term):
        return instr_boundary(term, Side.TGT)

    def __repr__(self):
        return "<L1>"


L1 = InstructionCarrier()


@lru_cache(maxsize=65536)
def instr_boundary(term, side):
    """One-step source or target of an instruction."""
    side = Side(side)
    if term.dim == 0:
        raise DimZero(f"{term} is 0-dimensional")
    if isinstance(term, Unit):
        return Unit(term.n - 1)
    if isinstance(term, Contract):
        return term.src if side is Side.SRC else term.tgt
    face = diagram_boundary(term.args, term.dim - 1, side)
    return mu_instr(instr_boundary(term.head, side), face)


def _all_units(diagram):
    return all(isinstance(t, Unit) for t in diagram.tops)


@lru_cache(maxsize=65536)
def mu_instr(head, args):
    """Substitute ``args`` into ``head`` and return the normal form."""
    if args.shape != head.arity:
        raise ShapeMismatch(f"arguments of shape {args.shape} for an instruction of arity {head.arity}")
    if isinstance(head, Unit):
        return args.top()
    if _all_units(args):
        return head
    if isinstance(head, Contract):
        return Subst(head, args)
    # graft: every argument of the inner substitution receives its piece of args
    pieces = cut(map_T(arity, head.args), args)
    grafted = zip_layers(head.args.frame, pieces.frame, mu_instr)
    logger.debug("grafted %s into %s", args.shape, head.arity)
    return mu_instr(head.head, PastingDiagram(grafted, head.args.dim))


def normalize(term):
    if isinstance(term, Unit):
        return term
    if isinstance(term, Contract):
        return Contract(normalize(term.src), normalize(term.tgt), term.arity)
    return mu_instr(normalize(term.head), map_T(normalize, term.args))


def instr_equal(left, right):
    return normalize(left) == normalize(right)


def parallel(left, right):
    if left.dim != right.dim:
        return False
    if left.dim == 0:
        return True
    return all(instr_boundary(left, side) == instr_boundary(right, side) for side in Side)


def kappa(src, tgt, k):
    """The contraction cell src -> tgt of arity ``k``."""
    n = k.dim
    if n == 0:
        raise DimZero("contraction cells have dimension at least 1")
    if src.dim != n - 1 or tgt.dim != n - 1:
        raise ArityMismatch(f"{n}-dimensional arity needs ({n - 1})-dimensional endpoints")
    src, tgt = normalize(src), normalize(tgt)
    face = scheme_boundary(k, n - 1)
    if src.arity != face or tgt.arity != face:
        raise ArityMismatch(f"endpoints of arity {src.arity}, {tgt.arity} do not bound {k}")
    if not parallel(src, tgt):
        raise NotParallel(f"{src} and {tgt} are not parallel")
    return Contract(src, tgt, k)


@lru_cache(maxsize=4096)
def sp(k):
    """The standard pasting instruction of arity ``k``."""
    if k.tops == (k.dim,):
        return Unit(k.dim)
    face = sp(scheme_boundary(k, k.dim - 1))
    return Contract(face, face, k)


def coherence_instr(src, tgt, k=None):
    """The degenerate (n+1)-instruction src -> tgt over arity ``k``."""
    k = src.arity if k is None else k
    if src.arity != k or tgt.arity != k:
        raise ArityMismatch(f"coherence over {k} needs endpoints of that arity")
    return kappa(src, tgt, lift_dim(k))


def delta_instr(term, i):
    """kappa(s term, t term, delta^i of its arity)."""
    if term.dim == 0:
        raise DimensionOutOfRange("delta needs dimension at least 1")
    return kappa(
        instr_boundary(term, Side.SRC),
        instr_boundary(term, Side.TGT),
        delta_scheme(term.arity, i),
    )


def suspend_instr(term):
    """The suspension of an instruction, one dimension up."""
    if isinstance(term, Unit):
        return Unit(term.n + 1)
    if isinstance(term, Contract):
        return Contract(suspend_instr(term.src), suspend_instr(term.tgt), suspend_scheme(term.arity))
    args = suspend_diagram(term.args, Unit(0), Unit(0), suspend_instr)
    return mu_instr(suspend_instr(term.head), args)


def binary_scheme(n):
    """[n,n / n-1] at dimension n."""
    return SchemeCell(PastingScheme((n, n), (n - 1,)), n)


def comp_instr(n):
    """The binary composition instruction sp([n,n / n-1])."""
    return sp(binary_scheme(n))


def id_instr(n):
    """The identity instruction sp([n-1]) of dimension n."""
    return sp(column(n - 1, n))


def instr_diagram(shape, tops):
    """A pasting diagram of instructions; bottoms are read off the tops."""
    return validate_diagram(L1, shape, tops)


def compose_instr(left, right):
    """left composed with right along their (n-1)-boundary, in L1."""
    n = left.dim
    return mu_instr(comp_instr(n), instr_diagram(binary_scheme(n), (left, right)))


def identity_on(term):
    """The identity (n+1)-instruction on an n-instruction."""
    n = term.dim + 1
    return mu_instr(id_instr(n), lift_diagram(eta_T(L1, term), n))
