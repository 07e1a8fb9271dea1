"""
Pasting diagrams in a carrier and the free strict omega-category monad T.

A diagram is stored as a layer tree. The layer at depth d lists the
d-cells met from left to right; every gap between two consecutive
points is filled by a child layer at depth d+1. A layer with a single
point and no children holds a top cell of dimension d. Reading leaves
and interior points depth-first gives back the table of the diagram.

Any object exposing ``dim(cell)``, ``source(cell)`` and ``target(cell)``
can serve as a carrier: a GlobularSet, the terminal globular set, the
instruction calculus, or the cells of a weak omega-category.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass
from functools import cached_property

from .exceptions import (
    BoundaryMismatch,
    DimensionOutOfRange,
    DimMismatch,
    GlobularityViolation,
    ShapeMismatch,
)
from .pasting import PastingScheme, SchemeCell, column, scheme_boundary
from .values import Side, Value

logger = logging.getLogger(__name__)


def source_at(carrier, cell, m):
    """Iterated source s_m."""
    while carrier.dim(cell) > m:
        cell = carrier.source(cell)
    return cell


def target_at(carrier, cell, m):
    """Iterated target t_m."""
    while carrier.dim(cell) > m:
        cell = carrier.target(cell)
    return cell


def boundary_at(carrier, cell, m, side):
    return source_at(carrier, cell, m) if side is Side.SRC else target_at(carrier, cell, m)


class Terminal:
    """The terminal globular set: its unique d-cell is the integer d."""

    def dim(self, cell):
        return cell

    def source(self, cell):
        if cell == 0:
            raise DimensionOutOfRange("0-cell has no source")
        return cell - 1

    target = source

    def __repr__(self):
        return "<Terminal>"


TERMINAL = Terminal()


class Shapes:
    """T1 as a carrier: cells are scheme cells, s and t coincide."""

    def dim(self, cell):
        return cell.dim

    def source(self, cell):
        if cell.dim == 0:
            raise DimensionOutOfRange("0-cell has no source")
        return scheme_boundary(cell, cell.dim - 1)

    target = source

    def __repr__(self):
        return "<Shapes>"


SHAPES = Shapes()


@dataclass(frozen=True, eq=False)
class Layer(Value):
    """One level of a pasting diagram; ``len(children) == len(points) - 1``."""
    points: tuple
    children: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "points", tuple(self.points))
        object.__setattr__(self, "children", tuple(self.children))
        if not self.points or len(self.children) != len(self.points) - 1:
            raise ShapeMismatch(
                f"layer with {len(self.points)} points cannot have {len(self.children)} children"
            )
        super().__post_init__()

    @property
    def is_leaf(self):
        return not self.children

    def map(self, fn):
        return Layer(tuple(fn(p) for p in self.points), tuple(c.map(fn) for c in self.children))

    def walk(self):
        yield from self.points
        for child in self.children:
            yield from child.walk()


def zip_layers(left, right, fn):
    """Combine two layer trees of the same structure pointwise."""
    if len(left.points) != len(right.points):
        raise ShapeMismatch("layer trees differ in structure")
    return Layer(
        tuple(fn(a, b) for a, b in zip(left.points, right.points)),
        tuple(zip_layers(a, b, fn) for a, b in zip(left.children, right.children)),
    )


def _read(layer, depth, table):
    if layer.is_leaf:
        table[0].append(layer.points[0])
        table[2].append(depth)
        return
    for j, child in enumerate(layer.children):
        if j:
            table[1].append(layer.points[j])
            table[3].append(depth)
        _read(child, depth + 1, table)


@dataclass(frozen=True, eq=False)
class PastingDiagram(Value):
    """
    An n-cell of TX.

    Fields:
        frame (Layer):
            The layer tree rooted at depth 0.

        dim (int):
            Ambient dimension n; may exceed every top (degenerate cells).

    The table view (``tops``, ``bottoms``, ``shape``) is derived from the
    frame, so two diagrams are equal exactly when their tables are.
    """
    frame: Layer
    dim: int

    @cached_property
    def _table(self):
        table = ([], [], [], [])
        _read(self.frame, 0, table)
        return tuple(tuple(part) for part in table)

    @property
    def tops(self):
        return self._table[0]

    @property
    def bottoms(self):
        return self._table[1]

    @cached_property
    def shape(self):
        return SchemeCell(PastingScheme(self._table[2], self._table[3]), self.dim)

    @property
    def rank(self):
        return len(self.bottoms)

    def top(self):
        """The single entry of a one-column diagram."""
        if self.rank:
            raise ShapeMismatch(f"diagram of shape {self.shape} has {self.rank + 1} tops")
        return self.tops[0]

    def __str__(self):
        tops = ", ".join(str(c) for c in self.tops)
        if self.bottoms:
            tops += " / " + ", ".join(str(c) for c in self.bottoms)
        return f"[{tops}] : {self.shape}"


# ------------------------------------------------------------
# Construction from tables
# ------------------------------------------------------------
def _grow(carrier, shape, tops, bottoms, lo, hi, depth):
    if lo == hi and shape.tops[lo] == depth:
        return Layer((tops[lo],))
    points = [source_at(carrier, tops[lo], depth)]
    children = []
    start = lo
    for i in range(lo + 1, hi + 1):
        if shape.bottoms[i - 1] == depth:
            children.append(_grow(carrier, shape, tops, bottoms, start, i - 1, depth + 1))
            points.append(bottoms[i - 1])
            start = i
    children.append(_grow(carrier, shape, tops, bottoms, start, hi, depth + 1))
    points.append(target_at(carrier, tops[hi], depth))
    return Layer(tuple(points), tuple(children))


def validate_diagram(carrier, shape, tops, bottoms=None):
    """
    Check a table of carrier cells against ``shape`` and build the diagram.

    When ``bottoms`` is omitted they are read off as targets of the
    preceding tops, and only the source side is checked.
    """
    if isinstance(shape, PastingScheme):
        shape = SchemeCell(shape, max(shape.tops))
    tops = tuple(tops)
    if len(tops) != len(shape.tops):
        raise ShapeMismatch(f"{shape} needs {len(shape.tops)} tops, got {len(tops)}")
    for i, (cell, k) in enumerate(zip(tops, shape.tops)):
        if carrier.dim(cell) != k:
            raise ShapeMismatch(f"top {i} ({cell}) is a {carrier.dim(cell)}-cell, expected {k}")
    if bottoms is None:
        bottoms = tuple(target_at(carrier, tops[i - 1], b) for i, b in enumerate(shape.bottoms, 1))
    bottoms = tuple(bottoms)
    if len(bottoms) != len(shape.bottoms):
        raise ShapeMismatch(f"{shape} needs {len(shape.bottoms)} bottoms, got {len(bottoms)}")
    for i, (cell, b) in enumerate(zip(bottoms, shape.bottoms), 1):
        if carrier.dim(cell) != b:
            raise ShapeMismatch(f"bottom {i} ({cell}) is a {carrier.dim(cell)}-cell, expected {b}")
        if target_at(carrier, tops[i - 1], b) != cell:
            raise BoundaryMismatch(f"t_{b} of top {i - 1} ({tops[i - 1]}) is not {cell}")
        if source_at(carrier, tops[i], b) != cell:
            raise BoundaryMismatch(f"s_{b} of top {i} ({tops[i]}) is not {cell}")
    frame = _grow(carrier, shape, tops, bottoms, 0, len(tops) - 1, 0)
    return PastingDiagram(frame, shape.dim)


def eta_T(carrier, cell):
    """The single-column diagram [x]."""
    return validate_diagram(carrier, column(carrier.dim(cell)), (cell,), ())


def map_T(fn, diagram):
    """Apply a cell map entrywise; the shape is unchanged."""
    return PastingDiagram(diagram.frame.map(fn), diagram.dim)


def lift_diagram(diagram, dim):
    """The same table regarded as a cell of higher dimension."""
    if dim < diagram.dim:
        raise DimensionOutOfRange(f"cannot lower {diagram.shape} to dimension {dim}")
    return PastingDiagram(diagram.frame, dim)


def suspend_diagram(diagram, low, high, fn=None):
    """
    Push a diagram one level up between two fixed 0-cells.

    ``fn`` relabels the entries; by default they are kept as they are,
    which is the inclusion of a hom carrier into its parent.
    """
    frame = diagram.frame if fn is None else diagram.frame.map(fn)
    return PastingDiagram(Layer((low, high), (frame,)), diagram.dim + 1)


# ------------------------------------------------------------
# Boundaries
# ------------------------------------------------------------
def _truncate(layer, depth, m, side):
    if depth == m:
        return Layer((layer.points[0] if side is Side.SRC else layer.points[-1],))
    return Layer(layer.points, tuple(_truncate(c, depth + 1, m, side) for c in layer.children))


def diagram_boundary(diagram, m, side):
    """s_m or t_m of a diagram: each m-transversal segment collapses to one column."""
    if not 0 <= m < diagram.dim:
        raise DimensionOutOfRange(f"level {m} is outside 0..{diagram.dim - 1}")
    return PastingDiagram(_truncate(diagram.frame, 0, m, Side(side)), m)


# ------------------------------------------------------------
# Composition and multiplication
# ------------------------------------------------------------
def _concat(layers, depth, d):
    first = layers[0]
    if len(layers) == 1:
        return first
    if depth < d:
        for other in layers[1:]:
            if other.points != first.points:
                raise BoundaryMismatch(f"{depth}-cells {other.points} and {first.points} differ")
        if first.is_leaf:
            return first
        return Layer(first.points, tuple(
            _concat([layer.children[j] for layer in layers], depth + 1, d)
            for j in range(len(first.children))
        ))
    points = list(first.points)
    children = list(first.children)
    for other in layers[1:]:
        if other.points[0] != points[-1]:
            raise BoundaryMismatch(f"{points[-1]} does not meet {other.points[0]} at level {d}")
        points.extend(other.points[1:])
        children.extend(other.children)
    return Layer(tuple(points), tuple(children))


def compose_along(left, right, m):
    """Binary composite of two n-cells of TX along their common m-boundary."""
    if left.dim != right.dim:
        raise DimMismatch(f"cannot compose a {left.dim}-cell with a {right.dim}-cell")
    if not 0 <= m < left.dim:
        raise DimensionOutOfRange(f"level {m} is outside 0..{left.dim - 1}")
    return PastingDiagram(_concat([left.frame, right.frame], 0, m), left.dim)


def _frame_of(point):
    if isinstance(point, SchemeCell):
        return skeleton(point).frame
    return point.frame


def _flatten(layer, depth):
    if layer.is_leaf:
        return _frame_of(layer.points[0])
    return _concat([_flatten(child, depth + 1) for child in layer.children], 0, depth)


def mu_T(nested):
    """
    Flatten a diagram whose entries are diagrams (or scheme cells).

    Each gap at depth d is filled by the composite along d of the
    flattened children, so neighbouring entries fuse along their
    shared boundary.
    """
    flat = PastingDiagram(_flatten(nested.frame, 0), nested.dim)
    logger.debug("flattened %s into %s", nested.shape, flat.shape)
    return flat


def mu_shape(nested):
    """mu_T on a diagram of scheme cells, returned as a scheme cell."""
    return mu_T(nested).shape


# ------------------------------------------------------------
# Cutting a flat diagram along a nested shape
# ------------------------------------------------------------
def _split(layer, pieces, depth, d):
    if depth < d:
        for piece in pieces:
            if len(piece.points) != len(layer.points):
                raise ShapeMismatch("piece structure does not match the diagram")
        if layer.is_leaf:
            return [layer] * len(pieces)
        per_child = [
            _split(child, [piece.children[c] for piece in pieces], depth + 1, d)
            for c, child in enumerate(layer.children)
        ]
        return [
            Layer(layer.points, tuple(split[j] for split in per_child))
            for j in range(len(pieces))
        ]
    parts = []
    pos = 0
    for piece in pieces:
        count = len(piece.children)
        parts.append(Layer(layer.points[pos:pos + count + 1], layer.children[pos:pos + count]))
        pos += count
    if pos != len(layer.children):
        raise ShapeMismatch("pieces do not cover the diagram")
    return parts


def _unflatten(outer, depth, flat):
    if outer.is_leaf:
        return Layer((PastingDiagram(flat, depth),))
    pieces = _split(flat, [_flatten(child, depth + 1) for child in outer.children], 0, depth)
    points = [PastingDiagram(_truncate(pieces[0], 0, depth, Side.SRC), depth)]
    points.extend(PastingDiagram(_truncate(p, 0, depth, Side.TGT), depth) for p in pieces)
    children = tuple(
        _unflatten(child, depth + 1, piece) for child, piece in zip(outer.children, pieces)
    )
    return Layer(tuple(points), children)


def cut(outer, flat):
    """
    Inverse of mu_T for a fixed outer diagram of shapes.

    ``outer`` has scheme cells (or diagrams, of which only the shapes
    matter) as entries; ``flat`` must have the flattened shape. Returns
    the diagram of pieces of ``flat`` arranged like ``outer``.
    """
    expected = mu_shape(map_T(_shape_point, outer))
    if flat.shape != expected:
        raise ShapeMismatch(f"cannot cut a diagram of shape {flat.shape} along {expected}")
    nested = PastingDiagram(_unflatten(map_T(_shape_point, outer).frame, 0, flat.frame), outer.dim)
    logger.debug("cut %s into %d pieces", flat.shape, nested.rank + 1)
    return nested


def _shape_point(point):
    return point if isinstance(point, SchemeCell) else point.shape


# ------------------------------------------------------------
# Shapes
# ------------------------------------------------------------
def skeleton(cell):
    """A scheme cell as a diagram over the terminal globular set."""
    return validate_diagram(TERMINAL, cell, cell.tops, cell.bottoms)


def shape_of(diagram):
    return diagram.shape


class FreeStrict:
    """
    TX regarded as a carrier: cells are pasting diagrams over ``base``.

    Methods:
        eta(cell):
            The single-column diagram on a base cell.
    """

    def __init__(self, base):
        self.base = base

    def dim(self, diagram):
        return diagram.dim

    def source(self, diagram):
        return diagram_boundary(diagram, diagram.dim - 1, Side.SRC)

    def target(self, diagram):
        return diagram_boundary(diagram, diagram.dim - 1, Side.TGT)

    def eta(self, cell):
        return eta_T(self.base, cell)

    def __repr__(self):
        return f"<FreeStrict over {self.base!r}>"


# ------------------------------------------------------------
# Colimit oracle
# ------------------------------------------------------------
def _extract(space, shift):
    from .globular import Cell, hom_globular_set

    zeros = space.cells_of(0)
    arrows = space.cells_of(1) if space.max_dim >= 1 else ()
    if not arrows:
        if len(zeros) != 1:
            raise GlobularityViolation("not the realisation of a pasting scheme")
        return Layer((Cell(shift, zeros[0].name),))
    successor = {}
    for arrow in arrows:
        successor[space.source(arrow)] = space.target(arrow)
    targets = set(successor.values())
    starts = [z for z in zeros if z not in targets]
    if len(starts) != 1:
        raise GlobularityViolation("0-cells are not linearly ordered")
    chain = [starts[0]]
    while chain[-1] in successor:
        chain.append(successor[chain[-1]])
    if len(chain) != len(zeros):
        raise GlobularityViolation("0-cells are not linearly ordered")
    children = tuple(
        _extract(hom_globular_set(space, a, b), shift + 1) for a, b in zip(chain, chain[1:])
    )
    return Layer(tuple(Cell(shift, z.name) for z in chain), children)


def extract_diagram(space, dim=None):
    """Read the generic pasting diagram out of a realisation-like globular set."""
    return PastingDiagram(_extract(space, 0), space.max_dim if dim is None else dim)


def _zip_into(generic, actual, mapping):
    def record(g, a):
        if mapping.setdefault(g, a) != a:
            raise BoundaryMismatch(f"generic cell {g} would map to both {mapping[g]} and {a}")
        return a

    zip_layers(generic, actual, record)
    return mapping


def colimit_flatten(nested):
    """
    mu_T computed by gluing realisations, for differential testing.

    Every entry becomes a map from the realisation of its shape; the
    realisations are glued along the boundary inclusions prescribed by
    the outer table and the flattened diagram is read off the apex.
    """
    from .globular import GlobMap, glue

    entries = [_as_diagram(entry) for entry in nested.tops]
    lows = [_as_diagram(low) for low in nested.bottoms]
    spaces, generic = zip(*(generic_diagram(entry.shape) for entry in entries))

    objects = []
    pending = []
    top_index = []
    for i, space in enumerate(spaces):
        if i:
            low = lows[i - 1]
            low_space, low_generic = generic_diagram(low.shape)
            objects.append(low_space)
            here = len(objects) - 1
            for there, frame, side in (
                (here - 1, generic[i - 1].frame, Side.TGT),
                (here + 1, generic[i].frame, Side.SRC),
            ):
                face = _truncate(frame, 0, low.dim, side)
                pending.append((here, there, _zip_into(low_generic.frame, face, {})))
        objects.append(space)
        top_index.append(len(objects) - 1)

    arrows = [(i, j, GlobMap(objects[i], objects[j], mapping)) for i, j, mapping in pending]
    colimit = glue(objects, arrows)
    back = {}
    for index, gen, entry in zip(top_index, generic, entries):
        for cell, value in _zip_into(gen.frame, entry.frame, {}).items():
            back.setdefault(colimit.legs[index](cell), value)
    flat = extract_diagram(colimit.apex, nested.dim)
    return map_T(back.__getitem__, flat)


def _as_diagram(point):
    return skeleton(point) if isinstance(point, SchemeCell) else point


def generic_diagram(cell):
    """The realisation of ``cell`` together with its generic diagram."""
    from .pasting import realisation

    space = realisation(cell)
    return space, extract_diagram(space, cell.dim)
