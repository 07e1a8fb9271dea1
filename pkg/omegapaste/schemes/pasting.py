"""
Pasting schemes: integer tables describing globular composition shapes.

A scheme ``[k0, ..., kr / b1, ..., br]`` lists the dimensions of the
top cells of a pasting shape and, between consecutive tops, the
dimension of the cell along which they are glued. A ``SchemeCell`` pins
the ambient dimension, since the same table occurs at many dimensions.

The zig-zag and nested-list encodings are codec views of the table.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass
from functools import cached_property

from .exceptions import (
    DimensionOutOfRange,
    LengthMismatch,
    MalformedEncoding,
    NegativeEntry,
    NotFullDimensional,
    ZigzagViolation,
)
from .values import Side, Value

logger = logging.getLogger(__name__)

ENCODINGS = ("table", "zigzag", "nested")


@dataclass(frozen=True, eq=False)
class PastingScheme(Value):
    """
    A validated table of naturals.

    Fields:
        tops (tuple[int]):
            k0 ... kr, dimensions of the top cells (length r+1).

        bottoms (tuple[int]):
            b1 ... br, gluing dimensions; each is a strict local minimum
            between its neighbouring tops.
    """
    tops: tuple
    bottoms: tuple = ()

    def __post_init__(self):
        try:
            tops = tuple(int(v) for v in self.tops)
            bottoms = tuple(int(v) for v in self.bottoms)
        except (TypeError, ValueError) as exc:
            raise MalformedEncoding(f"table entries must be integers: {exc}") from exc
        object.__setattr__(self, "tops", tops)
        object.__setattr__(self, "bottoms", bottoms)

        if len(tops) != len(bottoms) + 1:
            raise LengthMismatch(
                f"expected {len(bottoms) + 1} tops for {len(bottoms)} bottoms, got {len(tops)}"
            )
        if any(v < 0 for v in tops + bottoms):
            raise NegativeEntry(f"negative entry in {list(tops)} / {list(bottoms)}")
        for i, low in enumerate(bottoms, start=1):
            if not (tops[i - 1] > low < tops[i]):
                raise ZigzagViolation(
                    f"bottom {i} ({low}) is not below both {tops[i - 1]} and {tops[i]}"
                )
        super().__post_init__()

    @property
    def rank(self):
        return len(self.bottoms)

    def at(self, dim):
        """Return this table as a SchemeCell of dimension ``dim``."""
        return SchemeCell(self, dim)

    def __str__(self):
        tops = ",".join(str(v) for v in self.tops)
        if not self.bottoms:
            return f"[{tops}]"
        return f"[{tops} / {','.join(str(v) for v in self.bottoms)}]"


@dataclass(frozen=True, eq=False)
class SchemeCell(Value):
    """
    A pasting scheme regarded as an n-cell of T1.

    Fields:
        scheme (PastingScheme):
            The table; every top is at most ``dim``.

        dim (int):
            The ambient dimension n.
    """
    scheme: PastingScheme
    dim: int

    def __post_init__(self):
        if self.dim < 0 or max(self.scheme.tops) > self.dim:
            raise DimensionOutOfRange(
                f"{self.scheme} does not fit in dimension {self.dim}"
            )
        super().__post_init__()

    @property
    def tops(self):
        return self.scheme.tops

    @property
    def bottoms(self):
        return self.scheme.bottoms

    @property
    def rank(self):
        return self.scheme.rank

    @cached_property
    def full_positions(self):
        return tuple(i for i, k in enumerate(self.tops) if k == self.dim)

    def __str__(self):
        return f"{self.scheme}@{self.dim}"


def validate_scheme(tops, bottoms=()):
    """Validate two integer sequences and return the PastingScheme."""
    return PastingScheme(tuple(tops), tuple(bottoms))


def column(n, dim=None):
    """The single-column scheme [n], as a SchemeCell of ``dim`` (default n)."""
    return SchemeCell(PastingScheme((n,)), n if dim is None else dim)


def is_degenerate(cell):
    return max(cell.tops) < cell.dim


def fdl_norm(cell):
    """Number of top entries of full dimension."""
    return len(cell.full_positions)


def _check_level(cell, m):
    if not 0 <= m < cell.dim:
        raise DimensionOutOfRange(f"level {m} is outside 0..{cell.dim - 1} for {cell}")


def transversal_components(cell, m):
    """
    Maximal segments lying strictly above level ``m``.

    Returns index pairs (i, j), left to right, covering exactly the
    positions with k > m. A segment is split wherever a bottom drops
    below m.
    """
    _check_level(cell, m)
    tops, bottoms = cell.tops, cell.bottoms
    components = []
    start = None
    for i, k in enumerate(tops):
        if k <= m:
            if start is not None:
                components.append((start, i - 1))
                start = None
            continue
        if start is None:
            start = i
        elif bottoms[i - 1] < m:
            components.append((start, i - 1))
            start = i
    if start is not None:
        components.append((start, len(tops) - 1))
    return components


def scheme_boundary(cell, m):
    """
    The m-dimensional boundary: every m-transversal component collapses
    to the single column [m]. Source and target agree in T1.
    """
    _check_level(cell, m)
    tops, bottoms = cell.tops, cell.bottoms
    new_tops, new_bottoms = [], []
    components = dict(transversal_components(cell, m))
    i = 0
    while i < len(tops):
        if i > 0:
            new_bottoms.append(bottoms[i - 1])
        if i in components:
            new_tops.append(m)
            i = components[i] + 1
        else:
            new_tops.append(tops[i])
            i += 1
    return SchemeCell(PastingScheme(tuple(new_tops), tuple(new_bottoms)), m)


def delta_cases(cell, i):
    """
    Which rule of the delta move applies at position ``i``:
    ``"left"`` removes (k_i, b_i), ``"right"`` removes (k_i, b_{i+1}),
    ``"lower"`` replaces k_i by n-1.
    """
    n = cell.dim
    if n < 1:
        raise DimensionOutOfRange("delta needs dimension at least 1")
    if not 0 <= i < len(cell.tops) or cell.tops[i] != n:
        raise NotFullDimensional(f"entry {i} of {cell} is not {n}-dimensional")
    bottoms = cell.bottoms
    left = i > 0 and bottoms[i - 1] == n - 1
    right = i < cell.rank and bottoms[i] == n - 1
    return left, right


def delta_scheme(cell, i):
    """Remove the full-dimensional entry ``i`` (three-case rule)."""
    left, right = delta_cases(cell, i)
    tops, bottoms = list(cell.tops), list(cell.bottoms)
    if left:
        # if right also holds both rules give the same table
        del tops[i], bottoms[i - 1]
    elif right:
        del tops[i], bottoms[i]
    else:
        tops[i] = cell.dim - 1
    return SchemeCell(PastingScheme(tuple(tops), tuple(bottoms)), cell.dim)


def suspend_scheme(cell):
    """Raise every entry, and the dimension, by one."""
    scheme = PastingScheme(
        tuple(k + 1 for k in cell.tops),
        tuple(b + 1 for b in cell.bottoms),
    )
    return SchemeCell(scheme, cell.dim + 1)


def lift_dim(cell, dim=None):
    """The same table regarded one (or ``dim - cell.dim``) dimension higher."""
    return SchemeCell(cell.scheme, cell.dim + 1 if dim is None else dim)


def scheme_compose(left, right, m):
    """Composite of two T1 n-cells along a common m-boundary."""
    from .strict import compose_along, skeleton, shape_of

    return shape_of(compose_along(skeleton(left), skeleton(right), m))


# ------------------------------------------------------------
# Codecs: table <-> zig-zag <-> nested lists
# ------------------------------------------------------------
def table_to_zigzag(scheme):
    seq = [-1]
    current = -1
    waypoints = []
    for i, k in enumerate(scheme.tops):
        if i > 0:
            waypoints.append(scheme.bottoms[i - 1])
        waypoints.append(k)
    waypoints.append(-1)
    for target in waypoints:
        step = 1 if target > current else -1
        seq.extend(range(current + step, target + step, step))
        current = target
    return tuple(seq)


def check_zigzag(seq, dim=None):
    """Validate a smooth zig-zag sequence; return it as a tuple."""
    try:
        seq = tuple(int(v) for v in seq)
    except (TypeError, ValueError) as exc:
        raise MalformedEncoding(f"zig-zag entries must be integers: {exc}") from exc
    if len(seq) < 3:
        raise MalformedEncoding("a zig-zag sequence has at least three entries")
    if seq[0] != -1 or seq[-1] != -1:
        raise MalformedEncoding("a zig-zag sequence starts and ends at -1")
    for prev, cur in zip(seq, seq[1:]):
        if abs(cur - prev) != 1:
            raise MalformedEncoding(f"step {prev} -> {cur} is not +-1")
    inner = seq[1:-1]
    if min(inner) < 0:
        raise MalformedEncoding("inner zig-zag entries must be non-negative")
    if dim is not None and max(inner) > dim:
        raise MalformedEncoding(f"zig-zag exceeds dimension {dim}")
    return seq


def zigzag_to_table(seq):
    seq = check_zigzag(seq)
    tops, bottoms = [], []
    for i in range(1, len(seq) - 1):
        if seq[i - 1] != seq[i + 1]:
            continue
        if seq[i] > seq[i - 1]:
            tops.append(seq[i])
        else:
            bottoms.append(seq[i])
    return PastingScheme(tuple(tops), tuple(bottoms))


def nested_to_zigzag(value):
    seq = [-1, 0]

    def visit(node, depth):
        if not isinstance(node, (list, tuple)):
            raise MalformedEncoding(f"nested encoding contains a non-list {node!r}")
        for child in node:
            seq.append(depth + 1)
            visit(child, depth + 1)
            seq.append(depth)

    visit(value, 0)
    seq.append(-1)
    return tuple(seq)


def zigzag_to_nested(seq):
    seq = check_zigzag(seq)
    root = []
    stack = [root]
    for prev, cur in zip(seq[1:], seq[2:]):
        if cur > prev:
            child = []
            stack[-1].append(child)
            stack.append(child)
        else:
            stack.pop()

    def freeze(node):
        return tuple(freeze(child) for child in node)

    return freeze(root)


def format_nested(value):
    if not value:
        return "[ ]"
    return "[" + ",".join(format_nested(child) for child in value) + "]"


_TO_ZIGZAG = {
    "table": table_to_zigzag,
    "zigzag": check_zigzag,
    "nested": nested_to_zigzag,
}

_FROM_ZIGZAG = {
    "table": zigzag_to_table,
    "zigzag": check_zigzag,
    "nested": zigzag_to_nested,
}


def convert_encoding(value, source, target):
    """Convert between the table, zig-zag and nested-list encodings."""
    for name in (source, target):
        if name not in ENCODINGS:
            raise MalformedEncoding(f"unknown encoding {name!r}; expected one of {ENCODINGS}")
    if isinstance(value, SchemeCell):
        value = value.scheme
    return _FROM_ZIGZAG[target](_TO_ZIGZAG[source](value))


# ------------------------------------------------------------
# Realisation
# ------------------------------------------------------------
def realisation_colimit(cell):
    """
    The zig-zag of disks prescribed by the table, glued.

    Objects alternate top disks and bottom disks left to right; each
    bottom disk maps into its left neighbour as a target face and into
    its right neighbour as a source face.
    """
    from .globular import build_disk, disk_face, glue

    objects = []
    arrows = []
    for i, k in enumerate(cell.tops):
        if i > 0:
            low = cell.bottoms[i - 1]
            objects.append(build_disk(low))
            here = len(objects) - 1
            arrows.append((here, here - 1, disk_face(low, cell.tops[i - 1], Side.TGT)))
            arrows.append((here, here + 1, disk_face(low, k, Side.SRC)))
        objects.append(build_disk(k))
    colimit = glue(objects, arrows)
    logger.debug("realisation of %s has %s cells", cell, colimit.apex.cell_counts())
    return colimit


def realisation(cell):
    """The finite globular set realising ``cell``."""
    return realisation_colimit(cell).apex
