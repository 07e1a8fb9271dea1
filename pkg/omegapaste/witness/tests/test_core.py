from django.test import SimpleTestCase

from calculus.algebra import FreeAlgebra
from calculus.cells import FormalInv, extend_with_marks, support
from calculus.tests.fixtures import loop_set
from schemes.globular import validate_globular_set
from schemes.pasting import is_degenerate
from schemes.tests.fixtures import path_set
from witness.core import Fragment, core_filter, enumerate_cells


def degenerate_fragment(algebra, **enumerate_kw):
    """The generators and the degenerate-arity cells built only from them, in order."""
    fragment = enumerate_cells(algebra, 200, **enumerate_kw)
    kept = Fragment()
    for cell in fragment.cells:
        parts = fragment.parts[cell]
        if not parts or (is_degenerate(algebra.decompose(cell).arity) and all(p in kept.parts for p in parts)):
            kept.add(cell, parts)
    return kept


class EnumerateCellsTests(SimpleTestCase):

    def test_rounds(self):
        algebra = FreeAlgebra(loop_set())
        a, f = algebra.base.cells_of(0)[0], algebra.base.cells_of(1)[0]
        first = enumerate_cells(algebra, 100, rounds=1)
        self.assertEqual(
            set(first.cells),
            {a, f, algebra.identity(a), algebra.compose(f, f)},
        )
        self.assertEqual(first.parts[algebra.compose(f, f)], (f, f))
        second = enumerate_cells(algebra, 100, rounds=2)
        self.assertEqual(len(second.cells), 4 + 8)
        self.assertEqual([algebra.dim(c) for c in second.cells][:1], [0])

    def test_marks_seed_formal_inverses(self):
        algebra = FreeAlgebra(extend_with_marks(loop_set(), ["f"]))
        fragment = enumerate_cells(algebra, 100, rounds=0)
        (f,) = algebra.base.cells_of(1)
        self.assertIn(FormalInv(f), fragment.cells)
        self.assertEqual(fragment.parts[FormalInv(f)], (f,))

    def test_bound(self):
        algebra = FreeAlgebra(loop_set())
        with self.assertLogs("witness.core", "WARNING"):
            fragment = enumerate_cells(algebra, 3, rounds=2)
        self.assertTrue(fragment.truncated)
        self.assertEqual(len(fragment.cells), 3)


class CoreFilterTests(SimpleTestCase):

    def test_unmarked_loop(self):
        algebra = FreeAlgebra(loop_set())
        (f,) = algebra.base.cells_of(1)
        fragment = enumerate_cells(algebra, 100, rounds=2)
        report = core_filter(algebra, n=0, depth=1, fragment=fragment)
        for cell in fragment.cells:
            self.assertEqual(cell in report, f not in support(cell), str(cell))
        self.assertEqual(report.excluded[f], "missing_inverse_assignment")
        self.assertTrue(report.closed)
        self.assertFalse(report.truncated)

    def test_marked_loop(self):
        algebra = FreeAlgebra(extend_with_marks(loop_set(), ["f"]))
        (f,) = algebra.base.cells_of(1)
        report = core_filter(algebra, n=0, depth=0, rounds=1)
        self.assertIn(f, report)
        self.assertIn(FormalInv(f), report)
        self.assertIn(algebra.compose(f, FormalInv(f)), report)
        self.assertEqual(report.witnesses[f].inverse, FormalInv(f))

    def test_zero_cells_only(self):
        space = path_set()
        report = core_filter(FreeAlgebra(space), n=0, max_dim=0)
        self.assertEqual(set(report.kept), set(space.cells_of(0)))
        self.assertEqual(report.excluded, {})

    def test_no_threshold_keeps_everything(self):
        algebra = FreeAlgebra(loop_set())
        report = core_filter(algebra, n=None, rounds=1)
        self.assertEqual(len(report.kept), 4)
        self.assertEqual(report.witnesses, {})

    def test_threshold_above_the_cells(self):
        algebra = FreeAlgebra(loop_set())
        report = core_filter(algebra, n=1, rounds=1)
        self.assertEqual(len(report.kept), 4)
        self.assertEqual(report.excluded, {})


class DegenerateCoreTests(SimpleTestCase):

    def test_point_keeps_every_degenerate_cell(self):
        algebra = FreeAlgebra(validate_globular_set({"cells": {"0": ["a"]}}))
        (a,) = algebra.base.cells_of(0)
        fragment = degenerate_fragment(algebra, max_dim=2, rounds=3)
        self.assertIn(algebra.identity(algebra.identity(a)), fragment.cells)
        report = core_filter(algebra, n=0, depth=2, fragment=fragment)
        self.assertEqual(report.kept, fragment.cells)
        self.assertEqual(report.excluded, {})
        self.assertTrue(report.closed)
        self.assertEqual(report.witnesses[algebra.identity(a)].depth, 2)

    def test_unmarked_loop_at_depth_two(self):
        algebra = FreeAlgebra(loop_set())
        (f,) = algebra.base.cells_of(1)
        fragment = degenerate_fragment(algebra, max_dim=2, rounds=2)
        self.assertIn(algebra.identity(f), fragment.cells)
        report = core_filter(algebra, n=0, depth=2, fragment=fragment)
        self.assertEqual(
            set(report.kept),
            {cell for cell in fragment.cells if f not in support(cell)},
        )
        self.assertEqual(set(report.excluded), {cell for cell in fragment.cells if f in support(cell)})
        self.assertTrue(report.closed)

    def test_marked_loop_at_depth_two(self):
        algebra = FreeAlgebra(extend_with_marks(loop_set(), ["f"], depth=3))
        (f,) = algebra.base.cells_of(1)
        report = core_filter(algebra, n=0, depth=2, rounds=0)
        self.assertEqual(set(report.kept), {algebra.base.cells_of(0)[0], f, FormalInv(f)})
        self.assertEqual(report.witnesses[f].depth, 2)
