"""
The hereditarily invertible core of an enumerated fragment.

Cells are enumerated breadth first from the generators (and the formal
inverses of marked cells): each round adds identities and binary
composites of what is already known. core_filter then keeps a cell when
its boundaries are kept and, above dimension n, a witness of the
requested depth can be synthesized for it.
"""
import logging
from dataclasses import dataclass, field

from calculus.cells import FormalInv
from schemes.exceptions import OmegaError

from .synthesis import resolve_witness
from .witnesses import witness_problems

logger = logging.getLogger(__name__)


@dataclass
class Fragment:
    """
    Fields:
        cells (list):
            Enumerated cells, dimension-major, then in construction order.

        parts (dict):
            cell -> the cells it was built from (empty for generators).

        truncated (bool):
            The enumeration stopped at the cell bound.
    """
    cells: list = field(default_factory=list)
    parts: dict = field(default_factory=dict)
    truncated: bool = False

    def add(self, cell, parts=()):
        if cell in self.parts:
            return
        self.parts[cell] = tuple(parts)
        self.cells.append(cell)


@dataclass
class CoreReport:
    kept: list
    excluded: dict
    witnesses: dict
    closed: bool
    truncated: bool = False

    def __contains__(self, cell):
        return cell in self.kept


def enumerate_cells(algebra, bound, max_dim=None, rounds=1):
    """Generators, then ``rounds`` rounds of identities and binary composites."""
    carrier = algebra.carrier
    base = carrier.base
    if max_dim is None:
        max_dim = max((c.dim for c in base), default=0)
    fragment = Fragment()

    def room():
        if len(fragment.cells) >= bound:
            fragment.truncated = True
            return False
        return True

    for cell in sorted(base):
        if cell.dim <= max_dim and room():
            fragment.add(cell)
    for cell in sorted(getattr(carrier, "marks", ())):
        if cell.dim <= max_dim and room():
            fragment.add(FormalInv(cell), (cell,))

    for _ in range(rounds):
        known = list(fragment.cells)
        for x in known:
            if algebra.dim(x) < max_dim and room():
                fragment.add(algebra.identity(x), (x,))
        for u in known:
            n = algebra.dim(u)
            if n == 0:
                continue
            for v in known:
                if algebra.dim(v) == n and algebra.target(u) == algebra.source(v) and room():
                    fragment.add(algebra.compose(u, v), (u, v))
    if fragment.truncated:
        logger.warning("enumeration truncated at %d cells", bound)
    fragment.cells.sort(key=algebra.dim)
    return fragment


def core_filter(algebra, n=0, depth=1, bound=2000, store=None, fragment=None, **enumerate_kw):
    """
    Certify the enumerated cells that belong to the core.

    n=None keeps every cell; n=0 asks for the infinity-groupoid core; a
    general n only asks for invertibility above dimension n.
    """
    if fragment is None:
        fragment = enumerate_cells(algebra, bound, **enumerate_kw)
    kept, excluded, witnesses = [], {}, {}
    kept_set = set()
    for cell in fragment.cells:
        dim = algebra.dim(cell)
        if n is not None and dim > 0:
            faces = (algebra.source(cell), algebra.target(cell))
            missing = [face for face in faces if face not in kept_set]
            if missing:
                excluded[cell] = f"boundary {missing[0]} is not in the core"
                continue
        if n is not None and dim > n:
            try:
                witness = resolve_witness(algebra, cell, store, depth)
            except OmegaError as exc:
                excluded[cell] = exc.code
                continue
            problems = witness_problems(algebra, witness, depth)
            if problems:
                excluded[cell] = problems[0]
                continue
            witnesses[cell] = witness
        kept.append(cell)
        kept_set.add(cell)

    closed = all(
        cell in kept_set
        for cell, parts in fragment.parts.items()
        if parts and all(part in kept_set for part in parts)
    )
    logger.debug("core: %d kept, %d excluded, closed=%s", len(kept), len(excluded), closed)
    return CoreReport(kept, excluded, witnesses, closed, fragment.truncated)
