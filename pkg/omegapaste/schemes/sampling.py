"""
Seeded random generators for schemes, nests of schemes and diagrams.

Every function takes a ``random.Random``; tests feed one from
hypothesis so that failures shrink and replay.
"""
from .pasting import PastingScheme, SchemeCell
from .strict import SHAPES, FreeStrict, target_at, validate_diagram


def random_scheme(rng, dim, max_rank=3, low=0):
    """A random table with entries in ``low..dim`` (bottoms may go lower)."""
    tops = [rng.randint(low, dim)]
    bottoms = []
    for _ in range(rng.randint(0, max_rank)):
        if tops[-1] == 0 or dim == 0:
            break
        nxt = rng.randint(max(low, 1), dim)
        bottoms.append(rng.randint(0, min(tops[-1], nxt) - 1))
        tops.append(nxt)
    return PastingScheme(tuple(tops), tuple(bottoms))


def random_cell(rng, dim, max_rank=3):
    return SchemeCell(random_scheme(rng, dim, max_rank), dim)


def random_full_cell(rng, dim, max_rank=3):
    """A random non-degenerate cell of dimension ``dim``."""
    cell = random_cell(rng, dim, max_rank)
    if max(cell.tops) == dim:
        return cell
    return SchemeCell(PastingScheme((dim,) + cell.tops[1:], cell.bottoms), dim)


def extend_scheme(rng, boundary, dim, max_rank=2):
    """A random scheme cell of dimension ``dim`` whose m-boundary is ``boundary``."""
    m = boundary.dim
    tops, bottoms = [], []
    for i, k in enumerate(boundary.tops):
        if i:
            bottoms.append(boundary.bottoms[i - 1])
        if k == m and dim > m:
            segment = random_scheme(rng, dim - m, max_rank, low=1)
            tops.extend(v + m for v in segment.tops)
            bottoms.extend(v + m for v in segment.bottoms)
        else:
            tops.append(k)
    return SchemeCell(PastingScheme(tuple(tops), tuple(bottoms)), dim)


def extend_diagram(rng, carrier, boundary, dim, extend_cell):
    """
    Extend an m-diagram over a carrier whose sources and targets agree.

    Each m-dimensional entry is replaced by one or two entries of higher
    dimension glued along it.
    """
    m = boundary.dim
    shape = boundary.shape
    shape_tops, shape_bottoms, tops = [], [], []
    for i, cell in enumerate(boundary.tops):
        if i:
            shape_bottoms.append(shape.bottoms[i - 1])
        if shape.tops[i] == m and dim > m:
            for j in range(rng.randint(1, 2)):
                if j:
                    shape_bottoms.append(m)
                level = rng.randint(m + 1, dim)
                shape_tops.append(level)
                tops.append(extend_cell(rng, cell, level))
        else:
            shape_tops.append(shape.tops[i])
            tops.append(cell)
    outer = SchemeCell(PastingScheme(tuple(shape_tops), tuple(shape_bottoms)), dim)
    return validate_diagram(carrier, outer, tops)


def random_diagram(rng, carrier, shape, make_cell, extend_cell):
    """Fill ``shape`` left to right, extending each entry from its left neighbour."""
    entries = [make_cell(rng, shape.tops[0])]
    for k, low in zip(shape.tops[1:], shape.bottoms):
        face = target_at(carrier, entries[-1], low)
        entries.append(extend_cell(rng, face, k))
    return validate_diagram(carrier, shape, entries)


def random_nest(rng, dim, max_rank=2):
    """A random diagram of scheme cells (a cell of TT1)."""
    return random_diagram(
        rng,
        SHAPES,
        random_cell(rng, dim, max_rank),
        lambda r, k: random_cell(r, k, max_rank),
        lambda r, face, k: extend_scheme(r, face, k, max_rank),
    )


def random_double_nest(rng, dim, max_rank=2):
    """A random diagram of diagrams of scheme cells (a cell of TTT1)."""
    carrier = FreeStrict(SHAPES)
    return random_diagram(
        rng,
        carrier,
        random_cell(rng, dim, max_rank),
        lambda r, k: random_nest(r, k, max_rank),
        lambda r, face, k: extend_diagram(
            r, SHAPES, face, k, lambda r2, c, j: extend_scheme(r2, c, j, max_rank)
        ),
    )
