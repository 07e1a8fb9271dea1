"""
Consequences of the synthesis: equivalence of cells, uniqueness of
inverses, invariance of invertibility, and functoriality of witnesses.
"""
import logging

from calculus.algebra import LCell, coherence_lcell
from calculus.exceptions import NotParallel
from calculus.instructions import (
    Unit,
    binary_scheme,
    comp_instr,
    compose_instr,
    id_instr,
    instr_diagram,
    kappa,
    mu_instr,
    sp,
)
from schemes.exceptions import BoundaryMismatch
from schemes.pasting import PastingScheme, SchemeCell
from schemes.strict import eta_T, lift_diagram, validate_diagram

from .exceptions import DepthExhausted, NotInversesOfSameCell
from .synthesis import _synthesize, chain_scheme, witness_degenerate
from .witnesses import InverseWitness, flip, truncate

logger = logging.getLogger(__name__)


def _require(witness, depth):
    if witness.depth < depth:
        raise DepthExhausted(f"the witness for {witness.subject} has depth {witness.depth} < {depth}")
    return truncate(witness, depth)


def _whisker(algebra, n, tops, raised_at):
    """The cell kappa(comp, comp) over [n, n / n-1] with one entry raised to n+1."""
    levels = [n, n]
    levels[raised_at] = n + 1
    k = SchemeCell(PastingScheme(tuple(levels), (n - 1,)), n + 1)
    return LCell(kappa(comp_instr(n), comp_instr(n), k), validate_diagram(algebra.carrier, k, tops))


def _paste(algebra, cells):
    n = algebra.dim(cells[0])
    chain = chain_scheme(n, len(cells))
    lcell = LCell(sp(chain), validate_diagram(algebra.carrier, chain, cells))
    return lcell, algebra.evaluate(lcell)


def _unitor(n, right):
    """comp with an identity instruction on the right (or left) entry."""
    slots = [Unit(n), id_instr(n)] if right else [id_instr(n), Unit(n)]
    return mu_instr(comp_instr(n), instr_diagram(binary_scheme(n), slots))


# ------------------------------------------------------------
# Equivalence
# ------------------------------------------------------------
def equiv_refl(algebra, x, depth):
    """id(x) is invertible."""
    n = algebra.dim(x) + 1
    cell = LCell(id_instr(n), lift_diagram(eta_T(algebra.carrier, x), n))
    return witness_degenerate(algebra, cell, depth)


def equiv_sym(witness, depth=None):
    return flip(witness if depth is None else _require(witness, depth))


def equiv_trans(algebra, first, second, depth):
    """The composite of two invertible cells, witnessed."""
    u, v = first.subject, second.subject
    n = algebra.dim(u)
    if n == 0 or algebra.dim(v) != n or algebra.target(u) != algebra.source(v):
        raise BoundaryMismatch(f"{u} and {v} do not compose")
    cell = LCell(comp_instr(n), validate_diagram(algebra.carrier, binary_scheme(n), (u, v)))
    return _synthesize(algebra, cell, (_require(first, depth), _require(second, depth)), depth)


# ------------------------------------------------------------
# Uniqueness of inverses
# ------------------------------------------------------------
def unique_inverse_path(algebra, witness, other, depth):
    """
    An invertible cell v -> v' between two inverses of the same u:

        v -> v*id(x) -> v*(u*v') -> (v*u)*v' -> id(y)*v' -> v'

    Returns the cell and its witness at ``depth``; both input witnesses
    need one more level.
    """
    if witness.subject != other.subject:
        raise NotInversesOfSameCell(f"{witness.subject} and {other.subject} differ")
    witness, other = _require(witness, depth + 1), _require(other, depth + 1)
    u, v, v_other = witness.subject, witness.inverse, other.inverse
    n = algebra.dim(u)
    carrier = algebra.carrier

    pad = coherence_lcell(Unit(n), _unitor(n, right=True), eta_T(carrier, v))
    expand = _whisker(algebra, n, (v, other.sub_p.inverse), 1)
    triple = validate_diagram(carrier, SchemeCell(PastingScheme((n, n, n), (n - 1, n - 1)), n), (v, u, v_other))
    rebracket = coherence_lcell(
        compose_instr(Unit(n), comp_instr(n)),
        compose_instr(comp_instr(n), Unit(n)),
        triple,
    )
    contract = _whisker(algebra, n, (witness.q, v_other), 0)
    unpad = coherence_lcell(_unitor(n, right=False), Unit(n), eta_T(carrier, v_other))

    steps = (pad, expand, rebracket, contract, unpad)
    lcell, path = _paste(algebra, [algebra.evaluate(step) for step in steps])
    labels = (
        witness_degenerate(algebra, pad, depth),
        _synthesize(algebra, expand, (None, flip(other.sub_p)), depth),
        witness_degenerate(algebra, rebracket, depth),
        _synthesize(algebra, contract, (witness.sub_q, None), depth),
        witness_degenerate(algebra, unpad, depth),
    )
    logger.debug("inverse path between %s and %s", v, v_other)
    return path, _synthesize(algebra, lcell, labels, depth)


# ------------------------------------------------------------
# Invariance and functoriality
# ------------------------------------------------------------
def transport_invertibility(algebra, witness, connect, depth):
    """
    Invertibility of v from that of u and an invertible c: u -> v.

    The inverse of v is the inverse w of u; p and q whisker the inverse of
    c into u's cancellation cells.
    """
    u = witness.subject
    if algebra.source(connect.subject) != u:
        raise NotParallel(f"{connect.subject} does not start at {u}")
    witness = _require(witness, depth)
    connect = _require(connect, max(depth - 1, 0))
    n = algebra.dim(u)
    v = algebra.target(connect.subject)
    w = witness.inverse
    back = connect.inverse

    left = _whisker(algebra, n, (back, w), 0)
    right = _whisker(algebra, n, (w, back), 1)
    p_lcell, p = _paste(algebra, [algebra.evaluate(left), witness.p])
    q_lcell, q = _paste(algebra, [algebra.evaluate(right), witness.q])
    if depth == 0:
        return InverseWitness(v, w, p, q)
    sub = depth - 1
    sub_p = _synthesize(algebra, p_lcell, (
        _synthesize(algebra, left, (flip(connect), None), sub),
        witness.sub_p,
    ), sub)
    sub_q = _synthesize(algebra, q_lcell, (
        _synthesize(algebra, right, (None, flip(connect)), sub),
        witness.sub_q,
    ), sub)
    return InverseWitness(v, w, p, q, sub_p, sub_q)


def push_witness(fmap, witness):
    """Apply an algebra map to every cell of a witness."""
    if witness is None:
        return None
    return InverseWitness(
        fmap(witness.subject),
        fmap(witness.inverse),
        fmap(witness.p),
        fmap(witness.q),
        push_witness(fmap, witness.sub_p),
        push_witness(fmap, witness.sub_q),
    )
