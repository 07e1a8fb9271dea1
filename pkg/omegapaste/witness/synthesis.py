"""
Synthesis of invertibility witnesses.

Every pasting of invertible cells is invertible: for c = xi(phi, u) the
inverse reverses each (n-1)-transversal component of u, substituting
the inverses of the full-dimensional labels, and the cancellation cell
p: c * c_inv -> id(s c) is built by induction on the number of
full-dimensional labels. Each step removes the last label v_j of the
leftmost component against its inverse:

    w1  rebracket c * c_inv so that u_j and v_j sit in one composite
    w2  whisker p_j into that composite
    w3  drop the identity left behind (unit law)
    w4  split what remains back into a composite of two delta-pastings
    w5  cancel the smaller pair recursively

and p is the standard pasting of w1..w5. The degenerate case needs no
labels: p and q are coherence cells.

Label witnesses are passed positionally: a tuple aligned with the tops
of the diagram, holding an InverseWitness at every full-dimensional
position and None elsewhere.
"""
import logging
from functools import lru_cache

from calculus.algebra import (
    LCell,
    coherence_lcell,
    delta_diagram,
    lift_along_ar,
    unit_law_lcell,
)
from calculus.cells import FORMAL_ATOMS, Composite
from calculus.instructions import (
    Unit,
    comp_instr,
    compose_instr,
    delta_instr,
    identity_on,
    instr_boundary,
    instr_diagram,
    kappa,
    mu_instr,
    sp,
)
from schemes.exceptions import BoundaryMismatch, DimensionOutOfRange
from schemes.pasting import (
    PastingScheme,
    SchemeCell,
    delta_cases,
    delta_scheme,
    fdl_norm,
    is_degenerate,
    transversal_components,
)
from schemes.strict import compose_along, diagram_boundary, validate_diagram
from schemes.values import Side

from .exceptions import DepthExhausted, MissingInverseAssignment, NotDegenerate
from .witnesses import InverseWitness, flip

logger = logging.getLogger(__name__)


def chain_scheme(dim, length):
    """[dim, ..., dim / dim-1, ...] with ``length`` columns."""
    scheme = PastingScheme((dim,) * length, (dim - 1,) * (length - 1))
    return SchemeCell(scheme, dim)


def _check_depth(depth):
    if depth < 0:
        raise DepthExhausted("witness depth must be non-negative")


# ------------------------------------------------------------
# Inverse instructions
# ------------------------------------------------------------
def _reverse(algebra, cell, inverses):
    phi, u = cell.instr, cell.diagram
    k = u.shape
    n = k.dim
    tops, bottoms = list(u.tops), list(u.bottoms)
    for i, j in transversal_components(k, n - 1):
        for pos in range(i, j + 1):
            if inverses[pos] is None:
                raise MissingInverseAssignment(f"no inverse for label {pos} ({u.tops[pos]})")
        tops[i:j + 1] = [inverses[pos] for pos in range(j, i - 1, -1)]
        bottoms[i:j] = reversed(bottoms[i:j])
    diagram = validate_diagram(algebra.carrier, k, tops, bottoms)
    instr = kappa(instr_boundary(phi, Side.TGT), instr_boundary(phi, Side.SRC), k)
    return LCell(instr, diagram)


def inverse_instruction(algebra, cell, assign):
    """
    The inverse LCell of ``cell``: kappa(t phi, s phi, ar phi) over the
    diagram with every (n-1)-transversal component reversed.

    ``assign`` maps a full-dimensional label to its inverse data: an
    InverseWitness or a (v, p, q) triple.
    """
    if cell.dim == 0:
        raise DimensionOutOfRange("0-cells have no inverse")
    tops = cell.diagram.tops
    inverses = [None] * len(tops)
    for pos in cell.arity.full_positions:
        data = assign.get(tops[pos])
        if data is None:
            raise MissingInverseAssignment(f"no inverse assigned to {tops[pos]}")
        inverses[pos] = data.inverse if isinstance(data, InverseWitness) else data[0]
    return _reverse(algebra, cell, inverses)


# ------------------------------------------------------------
# Degenerate arities
# ------------------------------------------------------------
def _degenerate_cancel(algebra, cell, inverse, depth):
    """p: xi(cell) * xi(inverse) -> id, as a coherence cell, with its witness."""
    source = instr_boundary(cell.instr, Side.SRC)
    lcell = coherence_lcell(compose_instr(cell.instr, inverse.instr), identity_on(source), cell.diagram)
    witness = witness_degenerate(algebra, lcell, depth - 1) if depth > 0 else None
    return algebra.evaluate(lcell), witness


@lru_cache(maxsize=4096)
def witness_degenerate(algebra, cell, depth):
    """
    Witness a cell whose arity is degenerate.

    The inverse contracts the swapped boundaries over the same diagram;
    p and q are coherence cells, degenerate again, so the recursion
    continues to any depth.
    """
    _check_depth(depth)
    if cell.dim == 0 or not is_degenerate(cell.arity):
        raise NotDegenerate(f"arity {cell.arity} is not degenerate")
    n = cell.dim
    face = diagram_boundary(cell.diagram, n - 1, Side.SRC)
    src = instr_boundary(cell.instr, Side.SRC)
    tgt = instr_boundary(cell.instr, Side.TGT)
    inverse = lift_along_ar(LCell(tgt, face), LCell(src, face), cell.diagram)
    p, sub_p = _degenerate_cancel(algebra, cell, inverse, depth)
    q, sub_q = _degenerate_cancel(algebra, inverse, cell, depth)
    return InverseWitness(
        algebra.evaluate(cell), algebra.evaluate(inverse), p, q, sub_p, sub_q,
    )


# ------------------------------------------------------------
# The cancellation chain
# ------------------------------------------------------------
def _mirror(k, labels):
    """Labels of the reversed diagram: each component read backwards, flipped."""
    mirrored = list(labels)
    for i, j in transversal_components(k, k.dim - 1):
        for pos in range(i, j + 1):
            mirrored[pos] = flip(labels[i + j - pos])
    return tuple(mirrored)


def _replace_pair(cells, at, entry):
    cells = list(cells)
    cells[at:at + 2] = [entry]
    return cells


@lru_cache(maxsize=4096)
def _cancel(algebra, cell, inverse, labels, depth):
    """
    p: xi(cell) * xi(inverse) -> id(s xi(cell)) and, for depth > 0, its
    witness at depth - 1.

    ``inverse`` is the component-wise reversal of ``cell`` with the
    inverses recorded in ``labels``.
    """
    phi, u = cell.instr, cell.diagram
    phi_inv, u_inv = inverse.instr, inverse.diagram
    k = u.shape
    n = k.dim
    logger.debug("cancel %s: measure (%d, %d)", k, fdl_norm(k), depth)
    if is_degenerate(k):
        return _degenerate_cancel(algebra, cell, inverse, depth)

    first, last = transversal_components(k, n - 1)[0]
    label = labels[last]
    entry = u.tops[last]
    src = instr_boundary(phi, Side.SRC)

    joined = compose_along(u, u_inv, n - 1)
    merged_shape = delta_scheme(joined.shape, last)
    head = kappa(src, src, merged_shape)
    slots = [Unit(level) for level in merged_shape.tops]
    slots[last] = comp_instr(n)
    merged = mu_instr(head, instr_diagram(merged_shape, slots))
    rebracket = coherence_lcell(compose_instr(phi, phi_inv), merged, joined)

    raised_tops = list(merged_shape.tops)
    raised_tops[last] = n + 1
    raised = SchemeCell(PastingScheme(tuple(raised_tops), merged_shape.bottoms), n + 1)
    with_p = validate_diagram(algebra.carrier, raised, _replace_pair(joined.tops, last, label.p))
    whisker = LCell(kappa(head, head, raised), with_p)

    unit = algebra.identity(algebra.source(entry))
    with_id = validate_diagram(algebra.carrier, merged_shape, _replace_pair(joined.tops, last, unit))
    unit_law = unit_law_lcell(algebra, LCell(head, with_id), last)

    reduced = delta_diagram(algebra, with_id, last, "exact")
    rest = LCell(delta_instr(phi, last), delta_diagram(algebra, u, last, "plus"))
    rest_inverse = LCell(delta_instr(phi_inv, first), delta_diagram(algebra, u_inv, first, "minus"))
    if compose_along(rest.diagram, rest_inverse.diagram, n - 1) != reduced:
        raise BoundaryMismatch(f"delta of {merged_shape} at {last} does not split as a composite")
    split = coherence_lcell(
        delta_instr(head, last),
        compose_instr(rest.instr, rest_inverse.instr),
        reduced,
    )

    rest_labels = list(labels)
    left, _ = delta_cases(k, last)
    if left:
        del rest_labels[last]
    else:
        rest_labels[last] = None
    tail, tail_witness = _cancel(algebra, rest, rest_inverse, tuple(rest_labels), depth)

    steps = [rebracket, whisker, unit_law, split]
    cells = [algebra.evaluate(step) for step in steps] + [tail]
    chain = chain_scheme(n + 1, len(cells))
    pasting = LCell(sp(chain), validate_diagram(algebra.carrier, chain, cells))
    p = algebra.evaluate(pasting)
    if depth == 0:
        return p, None

    if label.sub_p is None:
        raise DepthExhausted(f"the witness for {entry} stops short of depth {depth}")
    whisker_labels = [None] * len(raised_tops)
    whisker_labels[last] = label.sub_p
    step_witnesses = (
        witness_degenerate(algebra, rebracket, depth - 1),
        _synthesize(algebra, whisker, tuple(whisker_labels), depth - 1),
        witness_degenerate(algebra, unit_law, depth - 1),
        witness_degenerate(algebra, split, depth - 1),
        tail_witness,
    )
    return p, _synthesize(algebra, pasting, step_witnesses, depth - 1)


@lru_cache(maxsize=4096)
def _synthesize(algebra, cell, labels, depth):
    _check_depth(depth)
    k = cell.arity
    if is_degenerate(k):
        return witness_degenerate(algebra, cell, depth)
    for pos in k.full_positions:
        label = labels[pos]
        if label is None:
            raise MissingInverseAssignment(f"no witness for label {pos} ({cell.diagram.tops[pos]})")
        if label.depth < depth:
            raise DepthExhausted(f"the witness for {label.subject} has depth {label.depth} < {depth}")
    inverse = _reverse(algebra, cell, [w.inverse if w is not None else None for w in labels])
    logger.debug("synthesize %s at depth %d", k, depth)
    p, sub_p = _cancel(algebra, cell, inverse, labels, depth)
    q, sub_q = _cancel(algebra, inverse, cell, _mirror(k, labels), depth)
    return InverseWitness(algebra.evaluate(cell), algebra.evaluate(inverse), p, q, sub_p, sub_q)


# ------------------------------------------------------------
# Entry points
# ------------------------------------------------------------
def atom_witness(carrier, cell, depth):
    """The witness a marked carrier supplies through formal atoms."""
    _check_depth(depth)
    if carrier.level(cell) < depth:
        raise DepthExhausted(
            f"{cell} carries formal atoms for {carrier.level(cell)} levels, {depth} requested"
        )
    inverse, p, q = carrier.atoms(cell)
    if depth == 0:
        return InverseWitness(cell, inverse, p, q)
    return InverseWitness(
        cell, inverse, p, q,
        atom_witness(carrier, p, depth - 1),
        atom_witness(carrier, q, depth - 1),
    )


def resolve_witness(algebra, cell, store=None, depth=0):
    """
    A witness for ``cell`` from the store, the formal atoms of the
    carrier, or by synthesis over its decomposition.
    """
    _check_depth(depth)
    if store is not None:
        found = store.lookup(cell, depth)
        if found is not None:
            return found
    carrier = algebra.carrier
    has_atoms = getattr(carrier, "has_atoms", None)
    if isinstance(cell, FORMAL_ATOMS) or (has_atoms is not None and has_atoms(cell)):
        return atom_witness(carrier, cell, depth)
    if algebra.dim(cell) == 0:
        raise MissingInverseAssignment(f"0-cell {cell} has no inverse")
    if not isinstance(cell, Composite):
        raise MissingInverseAssignment(f"{cell} is not known to be invertible")
    return synthesize(algebra, algebra.decompose(cell), store, depth)


def synthesize(algebra, cell, store=None, depth=0):
    """
    Witness xi(cell) at ``depth``, resolving the full-dimensional labels
    through ``resolve_witness``.
    """
    _check_depth(depth)
    if cell.dim == 0:
        raise DimensionOutOfRange("0-cells have no inverse")
    if is_degenerate(cell.arity):
        return witness_degenerate(algebra, cell, depth)
    tops = cell.diagram.tops
    labels = [None] * len(tops)
    for pos in cell.arity.full_positions:
        labels[pos] = resolve_witness(algebra, tops[pos], store, depth)
    return _synthesize(algebra, cell, tuple(labels), depth)


def admits_s_inverse(algebra, cell, store=None):
    """(v, p, q) when ``cell`` is invertible up to the store, else None."""
    try:
        if algebra.dim(cell) == 0:
            return None
        return resolve_witness(algebra, cell, store, 0).triple()
    except (MissingInverseAssignment, DepthExhausted):
        return None
