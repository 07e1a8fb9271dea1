"""
Seeded random generators for instructions and cells of LX.
"""
from schemes.globular import validate_globular_set
from schemes.pasting import scheme_boundary
from schemes.sampling import random_cell, random_diagram, random_nest
from schemes.strict import map_T
from schemes.values import Side

from .algebra import LCELLS, LCell, coherence_lcell, lcell_identity
from .instructions import instr_boundary, kappa, mu_instr, sp


def random_instruction_of_arity(rng, k, depth=2):
    """A random instruction of arity ``k``, built from contractions."""
    n = k.dim
    if n == 0 or depth == 0 or rng.random() < 0.3:
        return sp(k)
    face = scheme_boundary(k, n - 1)
    src = random_instruction_of_arity(rng, face, depth - 1)
    tgt = src
    if face.dim > 0 and rng.random() < 0.5:
        tgt = kappa(instr_boundary(src, Side.SRC), instr_boundary(src, Side.TGT), face)
    return kappa(src, tgt, k)


def random_instruction(rng, dim, max_rank=2):
    """A contraction cell, or a substitution of standard pastings into one."""
    if rng.random() < 0.5:
        return random_instruction_of_arity(rng, random_cell(rng, dim, max_rank))
    nest = random_nest(rng, dim, max_rank)
    head = random_instruction_of_arity(rng, nest.shape)
    return mu_instr(head, map_T(sp, nest))


def tower(dims=3):
    """One cell per dimension, every boundary the cell below: x0 <- x1 <- ..."""
    cells = {d: [f"x{d}"] for d in range(dims + 1)}
    faces = {str(d): {f"x{d}": f"x{d - 1}"} for d in range(1, dims + 1)}
    return validate_globular_set({"max_dim": dims, "cells": cells, "src": faces, "tgt": faces})


def extend_lcell(rng, face, dim):
    """An LCell of dimension ``dim`` whose iterated source is ``face``."""
    cell = face
    while cell.dim < dim:
        if cell.dim > 0 and rng.random() < 0.5:
            other = kappa(
                instr_boundary(cell.instr, Side.SRC),
                instr_boundary(cell.instr, Side.TGT),
                cell.arity,
            )
            cell = coherence_lcell(cell.instr, other, cell.diagram)
        else:
            cell = lcell_identity(cell)
    return cell


def random_lcell_diagram(rng, algebra, shape):
    """A diagram of LCells over a free algebra, of the given shape."""
    points = algebra.base.cells_of(0)

    def make(r, k):
        start = algebra.eta_cell(r.choice(points))
        return extend_lcell(r, start, k)

    return random_diagram(rng, LCELLS, shape, make, extend_lcell)


def random_two_level(rng, algebra, dim, max_rank=2):
    """A random cell of LLX: an instruction over a diagram of LCells."""
    diagram = random_lcell_diagram(rng, algebra, random_cell(rng, dim, max_rank))
    return LCell(random_instruction_of_arity(rng, diagram.shape), diagram)
