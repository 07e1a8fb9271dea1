"""Random pastings of invertible cells, for the witness properties."""
from functools import lru_cache

from calculus.algebra import FreeAlgebra, LCell
from calculus.cells import extend_with_marks
from calculus.sampling import random_instruction_of_arity
from schemes.sampling import random_full_cell
from schemes.strict import generic_diagram


@lru_cache(maxsize=256)
def marked_realisation(k, depth):
    """
    The free algebra on the realisation of ``k`` with every generator of
    top dimension marked to ``depth``, and the generic diagram of ``k``.
    """
    space, diagram = generic_diagram(k)
    marks = [cell for cell in space if cell.dim == k.dim > 0]
    return FreeAlgebra(extend_with_marks(space, marks, depth)), diagram


def random_marked_pasting(rng, depth, max_dim=2, max_rank=3):
    """
    An algebra and an LCell over a random non-degenerate shape whose
    labels carry atoms for ``depth`` levels of synthesis.
    """
    k = random_full_cell(rng, rng.randint(1, max_dim), max_rank)
    algebra, diagram = marked_realisation(k, depth + 1)
    return algebra, LCell(random_instruction_of_arity(rng, k), diagram)
