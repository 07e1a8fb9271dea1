"""
Finite truncated globular sets.

Cells are named per dimension; ``src`` and ``tgt`` map each cell one
dimension down and satisfy the globular identities. Colimits are
computed dimensionwise with a union-find over the disjoint union.
"""
from __future__ import annotations

import logging
import re
from dataclasses import dataclass

from .exceptions import (
    DanglingBoundary,
    DimensionOutOfRange,
    DimMismatch,
    GlobularityViolation,
    MalformedEncoding,
)
from .values import Side

logger = logging.getLogger(__name__)

# a letter or underscore, then letters, digits, underscores or primes
CELL_NAME = re.compile(r"[^\W\d][\w']*")


@dataclass(frozen=True, order=True)
class Cell:
    """A named cell; names are unique within a dimension."""
    dim: int
    name: str

    def __str__(self):
        return self.name


class GlobularSet:
    """
    A finite globular set truncated at ``max_dim``.

    Fields:
        max_dim (int):
            Highest dimension present (``-1`` for the empty set).

        cells (dict[int, tuple[Cell]]):
            Cells per dimension, in presentation order.

        src, tgt (dict[Cell, Cell]):
            One-step boundary maps for every cell of positive dimension.

    Methods:
        source(cell) / target(cell):
            One-step boundaries, so a GlobularSet is a cell carrier.

        source_at(cell, m) / target_at(cell, m):
            Iterated boundaries s_m, t_m.
    """

    def __init__(self, cells, src=None, tgt=None, max_dim=None):
        self.cells = {}
        for dim, group in sorted(cells.items()):
            self.cells[int(dim)] = tuple(group)
        self.src = dict(src or {})
        self.tgt = dict(tgt or {})
        present = [d for d, group in self.cells.items() if group]
        self.max_dim = max(present, default=-1) if max_dim is None else max_dim
        self._members = {cell for group in self.cells.values() for cell in group}
        self._by_name = {(cell.dim, cell.name): cell for cell in self._members}
        self._check()

    def _check(self):
        if len(self._by_name) != sum(len(group) for group in self.cells.values()):
            raise MalformedEncoding("cell names must be unique per dimension")
        for cell in self._members:
            if cell.dim > self.max_dim:
                raise DimensionOutOfRange(f"{cell} exceeds max_dim {self.max_dim}")
            if cell.dim == 0:
                continue
            for label, table in (("src", self.src), ("tgt", self.tgt)):
                face = table.get(cell)
                if face is None or face not in self._members or face.dim != cell.dim - 1:
                    raise DanglingBoundary(f"{label} of {cell.dim}-cell {cell} is missing or invalid")
            if cell.dim >= 2:
                s, t = self.src[cell], self.tgt[cell]
                if self.src[s] != self.src[t] or self.tgt[s] != self.tgt[t]:
                    raise GlobularityViolation(
                        f"{cell}: {s} and {t} do not share their boundary"
                    )

    # ---- carrier protocol -------------------------------------------------
    def dim(self, cell):
        return cell.dim

    def source(self, cell):
        if cell.dim == 0:
            raise DimensionOutOfRange(f"0-cell {cell} has no source")
        return self.src[cell]

    def target(self, cell):
        if cell.dim == 0:
            raise DimensionOutOfRange(f"0-cell {cell} has no target")
        return self.tgt[cell]

    def source_at(self, cell, m):
        while cell.dim > m:
            cell = self.source(cell)
        return cell

    def target_at(self, cell, m):
        while cell.dim > m:
            cell = self.target(cell)
        return cell

    # ---- queries ------------------------------------------------------------
    def __contains__(self, cell):
        return cell in self._members

    def __iter__(self):
        for dim in sorted(self.cells):
            yield from self.cells[dim]

    def __len__(self):
        return len(self._members)

    def cells_of(self, dim):
        return self.cells.get(dim, ())

    def cell(self, name, dim):
        try:
            return self._by_name[(dim, name)]
        except KeyError:
            raise DanglingBoundary(f"no {dim}-cell named {name!r}") from None

    def cell_counts(self):
        return tuple(len(self.cells_of(d)) for d in range(self.max_dim + 1))

    def __eq__(self, other):
        if not isinstance(other, GlobularSet):
            return NotImplemented
        return (
            self.max_dim == other.max_dim
            and self._members == other._members
            and self.src == other.src
            and self.tgt == other.tgt
        )

    __hash__ = None

    def __repr__(self):
        return f"<GlobularSet max_dim={self.max_dim} counts={self.cell_counts()}>"

    def to_presentation(self):
        """JSON-ready presentation; cells sorted lexicographically by name."""
        cells = {str(d): sorted(c.name for c in self.cells_of(d)) for d in range(self.max_dim + 1)}
        src = {}
        tgt = {}
        for d in range(1, self.max_dim + 1):
            group = sorted(self.cells_of(d), key=lambda c: c.name)
            src[str(d)] = {c.name: self.src[c].name for c in group}
            tgt[str(d)] = {c.name: self.tgt[c].name for c in group}
        return {"max_dim": self.max_dim, "cells": cells, "src": src, "tgt": tgt}


def validate_globular_set(presentation):
    """
    Build a GlobularSet from a raw presentation
    ``{"max_dim": n, "cells": {"0": [...]}, "src": {"1": {...}}, "tgt": {...}}``.
    """
    raw_cells = presentation.get("cells", {})
    max_dim = presentation.get("max_dim")
    cells = {}
    for dim, names in raw_cells.items():
        dim = int(dim)
        cells[dim] = [Cell(dim, str(name)) for name in names]
    if max_dim is None:
        max_dim = max((d for d, g in cells.items() if g), default=-1)
    known = {(c.dim, c.name): c for group in cells.values() for c in group}

    def resolve(table_name):
        table = {}
        for dim, mapping in presentation.get(table_name, {}).items():
            dim = int(dim)
            for name, face in mapping.items():
                cell = known.get((dim, str(name)))
                if cell is None:
                    raise DanglingBoundary(f"{table_name} given for unknown {dim}-cell {name!r}")
                face_cell = known.get((dim - 1, str(face)))
                if face_cell is None:
                    raise DanglingBoundary(
                        f"{table_name} of {name!r} names absent {dim - 1}-cell {face!r}"
                    )
                table[cell] = face_cell
        return table

    return GlobularSet(cells, resolve("src"), resolve("tgt"), max_dim=int(max_dim))


class GlobMap:
    """
    A morphism of globular sets given by a cell assignment.

    Fields:
        domain, codomain (GlobularSet)
        mapping (dict[Cell, Cell]):
            Must preserve dimension and commute with src and tgt.
    """

    def __init__(self, domain, codomain, mapping):
        self.domain = domain
        self.codomain = codomain
        self.mapping = dict(mapping)
        for cell in domain:
            image = self.mapping.get(cell)
            if image is None or image not in codomain or image.dim != cell.dim:
                raise GlobularityViolation(f"{cell} has no valid image")
            if cell.dim > 0:
                if self.mapping[domain.source(cell)] != codomain.source(image):
                    raise GlobularityViolation(f"map does not commute with src at {cell}")
                if self.mapping[domain.target(cell)] != codomain.target(image):
                    raise GlobularityViolation(f"map does not commute with tgt at {cell}")

    def __call__(self, cell):
        return self.mapping[cell]

    def then(self, other):
        """``other`` after ``self``."""
        return GlobMap(self.domain, other.codomain, {c: other(self(c)) for c in self.domain})

    @classmethod
    def identity(cls, space):
        return cls(space, space, {c: c for c in space})

    def is_isomorphism(self):
        images = set(self.mapping.values())
        return len(images) == len(self.domain) == len(self.codomain)

    def inverse(self):
        if not self.is_isomorphism():
            raise GlobularityViolation("only isomorphisms can be inverted")
        return GlobMap(self.codomain, self.domain, {v: k for k, v in self.mapping.items()})


# ------------------------------------------------------------
# Disks
# ------------------------------------------------------------
def build_disk(n, boundary_only=False):
    """G^n (one n-cell, two m-cells below) or its boundary."""
    cells = {}
    src, tgt = {}, {}
    for m in range(n):
        lo, hi = Cell(m, f"s{m}"), Cell(m, f"t{m}")
        cells[m] = [lo, hi]
        if m > 0:
            for cell in (lo, hi):
                src[cell] = Cell(m - 1, f"s{m - 1}")
                tgt[cell] = Cell(m - 1, f"t{m - 1}")
    if not boundary_only:
        top = Cell(n, f"e{n}")
        cells[n] = [top]
        if n > 0:
            src[top] = Cell(n - 1, f"s{n - 1}")
            tgt[top] = Cell(n - 1, f"t{n - 1}")
    return GlobularSet(cells, src, tgt, max_dim=n - 1 if boundary_only else n)


def disk_inclusion(n):
    """The inclusion of the boundary of G^n into G^n."""
    return GlobMap(build_disk(n, True), build_disk(n), {c: c for c in build_disk(n, True)})


def disk_face(m, n, side):
    """The source or target face G^m -> G^n for m <= n."""
    if m > n:
        raise DimensionOutOfRange(f"no face G^{m} -> G^{n}")
    low, high = build_disk(m), build_disk(n)
    mapping = {c: c for c in low if c.dim < m}
    top = Cell(m, f"e{m}")
    if m == n:
        mapping[top] = top
    else:
        mapping[top] = Cell(m, f"s{m}" if side is Side.SRC else f"t{m}")
    return GlobMap(low, high, mapping)


# ------------------------------------------------------------
# Parallelism
# ------------------------------------------------------------
def is_parallel(carrier, u, v):
    """True iff u, v have equal dimension and share source and target."""
    n = carrier.dim(u)
    if n != carrier.dim(v):
        raise DimMismatch(f"cannot compare a {n}-cell with a {carrier.dim(v)}-cell")
    if n == 0:
        return True
    return carrier.source(u) == carrier.source(v) and carrier.target(u) == carrier.target(v)


def pair_map(space, u, v):
    """The map from the boundary of G^{n+1} picking the pair (u, v)."""
    n = u.dim
    if v.dim != n:
        raise DimMismatch(f"cannot pair a {n}-cell with a {v.dim}-cell")
    mapping = {}
    for m in range(n):
        mapping[Cell(m, f"s{m}")] = space.source_at(u, m)
        mapping[Cell(m, f"t{m}")] = space.target_at(u, m)
    mapping[Cell(n, f"s{n}")] = u
    mapping[Cell(n, f"t{n}")] = v
    return GlobMap(build_disk(n + 1, True), space, mapping)


# ------------------------------------------------------------
# Colimits
# ------------------------------------------------------------
@dataclass
class Colimit:
    """The apex of a glued diagram and its canonical cocone legs."""
    apex: GlobularSet
    legs: list


def glue(objects, arrows=()):
    """
    Colimit of a finite diagram of globular sets.

    ``arrows`` are triples ``(i, j, f)`` with ``f: objects[i] -> objects[j]``.
    Classes are named ``q{dim}_{ordinal}`` in order of first appearance.
    """
    parent = {}

    def find(key):
        root = key
        while parent[root] != root:
            root = parent[root]
        while parent[key] != root:
            parent[key], key = root, parent[key]
        return root

    def union(a, b):
        ra, rb = find(a), find(b)
        if ra != rb:
            if ra < rb:
                parent[rb] = ra
            else:
                parent[ra] = rb

    order = {}
    for index, space in enumerate(objects):
        for cell in space:
            key = (index, cell)
            parent[key] = key
            order[key] = len(order)

    for i, j, morphism in arrows:
        if morphism.domain != objects[i] or morphism.codomain != objects[j]:
            raise GlobularityViolation(f"arrow {i} -> {j} does not match its objects")
        for cell in objects[i]:
            union((i, cell), (j, morphism(cell)))

    classes = {}
    counters = {}
    for index, space in enumerate(objects):
        for cell in space:
            root = find((index, cell))
            if root not in classes:
                ordinal = counters.get(cell.dim, 0)
                counters[cell.dim] = ordinal + 1
                classes[root] = Cell(cell.dim, f"q{cell.dim}_{ordinal}")

    cells = {}
    src, tgt = {}, {}
    seen = set()
    for index, cell in order:
        glued = classes[find((index, cell))]
        if glued in seen:
            continue
        seen.add(glued)
        cells.setdefault(glued.dim, []).append(glued)
        if cell.dim > 0:
            space = objects[index]
            src[glued] = classes[find((index, space.source(cell)))]
            tgt[glued] = classes[find((index, space.target(cell)))]

    max_dim = max((space.max_dim for space in objects), default=-1)
    apex = GlobularSet(cells, src, tgt, max_dim=max_dim)
    legs = [
        GlobMap(space, apex, {c: classes[find((index, c))] for c in space})
        for index, space in enumerate(objects)
    ]
    logger.debug("glued %d objects into %r", len(objects), apex)
    return Colimit(apex, legs)


def hom_globular_set(space, x, y):
    """
    The globular set X(x, y): cells u of dimension n+1 with s_0 u = x and
    t_0 u = y, regarded as n-cells. Names are kept.
    """
    if space.max_dim < 1:
        raise DimensionOutOfRange("hom sets need cells of dimension at least 1")
    if x.dim != 0 or y.dim != 0:
        raise DimMismatch("hom sets are taken between 0-cells")
    cells = {}
    src, tgt = {}, {}
    for dim in range(1, space.max_dim + 1):
        group = []
        for cell in space.cells_of(dim):
            if space.source_at(cell, 0) != x or space.target_at(cell, 0) != y:
                continue
            shifted = Cell(dim - 1, cell.name)
            group.append(shifted)
            if dim >= 2:
                src[shifted] = Cell(dim - 2, space.source(cell).name)
                tgt[shifted] = Cell(dim - 2, space.target(cell).name)
        cells[dim - 1] = group
    return GlobularSet(cells, src, tgt, max_dim=space.max_dim - 1)
