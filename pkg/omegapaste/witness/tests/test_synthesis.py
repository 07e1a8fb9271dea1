from unittest.mock import patch

from django.test import SimpleTestCase
from hypothesis import given, settings
from hypothesis import strategies as st

from calculus.algebra import FreeAlgebra, LCell, coherence_lcell
from calculus.cells import Composite, FormalInv, FormalP, FormalQ, extend_with_marks
from calculus.instructions import Unit, binary_scheme, comp_instr, compose_instr, id_instr, kappa, sp
from schemes.exceptions import DimensionOutOfRange
from schemes.pasting import PastingScheme, SchemeCell, column, fdl_norm, is_degenerate
from schemes.strict import eta_T, lift_diagram, validate_diagram
from schemes.tests.fixtures import cells, path_set
from witness import synthesis
from witness.exceptions import DepthExhausted, MissingInverseAssignment, NotDegenerate
from witness.synthesis import (
    admits_s_inverse,
    atom_witness,
    chain_scheme,
    inverse_instruction,
    resolve_witness,
    synthesize,
    witness_degenerate,
)
from witness.sampling import random_marked_pasting
from witness.witnesses import WitnessStore, validate_witness, witness_problems


def marked(space, marks, depth):
    return FreeAlgebra(extend_with_marks(space, marks, depth=depth))


def binary(algebra, u, v):
    return LCell(comp_instr(1), validate_diagram(algebra.carrier, binary_scheme(1), (u, v)))


def single(algebra, u):
    return LCell(kappa(Unit(0), Unit(0), column(1)), eta_T(algebra.carrier, u))


class ChainSchemeTests(SimpleTestCase):

    def test_chain(self):
        self.assertEqual(chain_scheme(2, 3), SchemeCell(PastingScheme((2, 2, 2), (1, 1)), 2))
        self.assertEqual(chain_scheme(1, 1), column(1))


class DegenerateWitnessTests(SimpleTestCase):

    def setUp(self):
        self.space = path_set()
        self.algebra = FreeAlgebra(self.space)
        self.a, self.f, self.g, self.h = cells(self.space, "a", "f", "g", "h")

    def identity_lcell(self):
        return LCell(id_instr(1), lift_diagram(eta_T(self.algebra.carrier, self.a), 1))

    def test_identity_is_its_own_inverse(self):
        witness = witness_degenerate(self.algebra, self.identity_lcell(), 1)
        identity = self.algebra.identity(self.a)
        self.assertEqual(witness.subject, identity)
        self.assertEqual(witness.inverse, identity)
        self.assertEqual(witness.depth, 1)
        self.assertTrue(validate_witness(self.algebra, witness, 1))

    def test_coherence_inverse_swaps_endpoints(self):
        ternary = SchemeCell(PastingScheme((1, 1, 1), (0, 0)), 1)
        diagram = validate_diagram(self.algebra.carrier, ternary, (self.f, self.g, self.h))
        left = compose_instr(Unit(1), comp_instr(1))
        right = compose_instr(comp_instr(1), Unit(1))
        witness = witness_degenerate(self.algebra, coherence_lcell(left, right, diagram), 0)
        expected = self.algebra.evaluate(coherence_lcell(right, left, diagram))
        self.assertEqual(witness.inverse, expected)
        self.assertTrue(validate_witness(self.algebra, witness, 0))

    def test_rejects_full_arity(self):
        with self.assertRaises(NotDegenerate):
            witness_degenerate(self.algebra, binary(self.algebra, self.f, self.g), 0)
        with self.assertRaises(NotDegenerate):
            witness_degenerate(self.algebra, self.algebra.eta_cell(self.a), 0)

    def test_negative_depth(self):
        with self.assertRaises(DepthExhausted):
            witness_degenerate(self.algebra, self.identity_lcell(), -1)


class InverseInstructionTests(SimpleTestCase):

    def setUp(self):
        self.space = path_set()
        self.algebra = marked(self.space, ["f", "g"], 1)
        self.a, self.b, self.f, self.g = cells(self.space, "a", "b", "f", "g")
        self.assign = {
            self.f: atom_witness(self.algebra.carrier, self.f, 0),
            self.g: atom_witness(self.algebra.carrier, self.g, 0).triple(),
        }

    def test_single_column(self):
        inverse = inverse_instruction(self.algebra, single(self.algebra, self.f), self.assign)
        self.assertEqual(inverse.instr, kappa(Unit(0), Unit(0), column(1)))
        self.assertEqual(inverse.diagram.tops, (FormalInv(self.f),))

    def test_binary_reverses_the_component(self):
        inverse = inverse_instruction(self.algebra, binary(self.algebra, self.f, self.g), self.assign)
        self.assertEqual(inverse.instr, comp_instr(1))
        self.assertEqual(inverse.diagram.tops, (FormalInv(self.g), FormalInv(self.f)))
        self.assertEqual(inverse.diagram.bottoms, (self.b,))

    def test_missing_assignment(self):
        with self.assertRaises(MissingInverseAssignment):
            inverse_instruction(self.algebra, binary(self.algebra, self.f, self.g), {self.f: self.assign[self.f]})

    def test_zero_dimensional(self):
        with self.assertRaises(DimensionOutOfRange):
            inverse_instruction(self.algebra, self.algebra.eta_cell(self.a), self.assign)


class SynthesizeTests(SimpleTestCase):

    def setUp(self):
        self.space = path_set()
        self.a, self.f, self.g = cells(self.space, "a", "f", "g")

    def test_single_label(self):
        algebra = marked(self.space, ["f"], 1)
        witness = synthesize(algebra, single(algebra, self.f))
        self.assertIsInstance(witness.subject, Composite)
        self.assertEqual(witness.inverse, algebra.evaluate(single(algebra, FormalInv(self.f))))
        self.assertTrue(validate_witness(algebra, witness, 0))

    def test_single_label_one_level_down(self):
        algebra = marked(self.space, ["f"], 2)
        witness = synthesize(algebra, single(algebra, self.f), depth=1)
        self.assertEqual(witness.depth, 1)
        self.assertEqual(witness.sub_p.subject, witness.p)
        self.assertEqual(witness.sub_q.subject, witness.q)

    def test_binary_composite(self):
        algebra = marked(self.space, ["f", "g"], 1)
        witness = synthesize(algebra, binary(algebra, self.f, self.g))
        self.assertEqual(witness.subject, algebra.compose(self.f, self.g))
        self.assertEqual(witness.inverse, algebra.compose(FormalInv(self.g), FormalInv(self.f)))
        self.assertTrue(validate_witness(algebra, witness, 0))

    def test_composite_of_identities(self):
        algebra = FreeAlgebra(self.space)
        identity = algebra.identity(self.a)
        witness = synthesize(algebra, binary(algebra, identity, identity), depth=1)
        self.assertEqual(witness.inverse, algebra.compose(identity, identity))
        self.assertTrue(validate_witness(algebra, witness, 1))

    def test_unmarked_label(self):
        algebra = marked(self.space, ["f"], 1)
        with self.assertRaises(MissingInverseAssignment):
            synthesize(algebra, binary(algebra, self.f, self.g))

    def test_atoms_run_out(self):
        algebra = marked(self.space, ["f", "g"], 1)
        with self.assertRaises(DepthExhausted):
            synthesize(algebra, binary(algebra, self.f, self.g), depth=1)

    def test_zero_dimensional(self):
        algebra = FreeAlgebra(self.space)
        with self.assertRaises(DimensionOutOfRange):
            synthesize(algebra, algebra.eta_cell(self.a))


class ResolveWitnessTests(SimpleTestCase):

    def setUp(self):
        self.space = path_set()
        self.algebra = marked(self.space, ["f", "g"], 1)
        self.a, self.f, self.g, self.h = cells(self.space, "a", "f", "g", "h")

    def test_atoms(self):
        witness = resolve_witness(self.algebra, self.f)
        self.assertEqual(witness.triple(), (FormalInv(self.f), FormalP(self.f), FormalQ(self.f)))
        flipped = resolve_witness(self.algebra, FormalInv(self.f))
        self.assertEqual(flipped.inverse, self.f)

    def test_generators_without_marks(self):
        with self.assertRaises(MissingInverseAssignment):
            resolve_witness(self.algebra, self.h)
        with self.assertRaises(MissingInverseAssignment):
            resolve_witness(self.algebra, self.a)

    def test_store_comes_first(self):
        composite = self.algebra.compose(self.f, self.g)
        store = WitnessStore(self.algebra, [resolve_witness(self.algebra, composite)])
        plain = FreeAlgebra(self.space)
        with self.assertRaises(MissingInverseAssignment):
            resolve_witness(plain, composite)
        found = resolve_witness(plain, composite, store)
        self.assertEqual(found.inverse, self.algebra.compose(FormalInv(self.g), FormalInv(self.f)))

    def test_admits_s_inverse(self):
        self.assertEqual(
            admits_s_inverse(self.algebra, self.f),
            (FormalInv(self.f), FormalP(self.f), FormalQ(self.f)),
        )
        self.assertIsNotNone(admits_s_inverse(self.algebra, self.algebra.compose(self.f, self.g)))
        self.assertIsNone(admits_s_inverse(self.algebra, self.h))
        self.assertIsNone(admits_s_inverse(self.algebra, self.a))


class CancellationChainTests(SimpleTestCase):

    def setUp(self):
        self.space = path_set()
        self.algebra = marked(self.space, ["f", "g"], 1)
        self.a, self.f, self.g = cells(self.space, "a", "f", "g")
        self.witness = synthesize(self.algebra, binary(self.algebra, self.f, self.g))

    def test_four_steps_then_the_smaller_pair(self):
        algebra = self.algebra
        chain = algebra.decompose(self.witness.p)
        self.assertEqual(chain.instr, sp(chain_scheme(2, 5)))
        rebracket, whisker, unit_law, split, tail = chain.diagram.tops
        for step in (rebracket, unit_law, split):
            self.assertTrue(is_degenerate(algebra.decompose(step).arity))
        self.assertEqual(
            algebra.decompose(whisker).diagram.tops,
            (self.f, FormalP(self.g), FormalInv(self.f)),
        )
        self.assertEqual(algebra.source(rebracket), algebra.compose(self.witness.subject, self.witness.inverse))
        self.assertEqual(algebra.target(split), algebra.source(tail))
        self.assertEqual(algebra.target(tail), algebra.identity(self.a))

    def test_tail_cancels_the_first_label(self):
        tail = self.algebra.decompose(self.witness.p).diagram.tops[-1]
        steps = self.algebra.decompose(tail).diagram.tops
        self.assertEqual(len(steps), 5)
        self.assertEqual(self.algebra.decompose(steps[1]).diagram.tops, (FormalP(self.f),))
        self.assertTrue(is_degenerate(self.algebra.decompose(steps[-1]).arity))


class MeasureTests(SimpleTestCase):

    def test_measure_decreases_along_the_recursion(self):
        space = path_set()
        algebra = marked(space, ["f", "g", "h"], 2)
        ternary = SchemeCell(PastingScheme((1, 1, 1), (0, 0)), 1)
        cell = LCell(sp(ternary), validate_diagram(algebra.carrier, ternary, cells(space, "f", "g", "h")))
        cancel = synthesis._cancel
        nested, stack = [], []

        def traced(algebra, cell, inverse, labels, depth):
            measure = (depth, fdl_norm(cell.arity))
            if stack:
                nested.append((stack[-1], measure))
            stack.append(measure)
            try:
                return cancel(algebra, cell, inverse, labels, depth)
            finally:
                stack.pop()

        cancel.cache_clear()
        synthesis._synthesize.cache_clear()
        with patch.object(synthesis, "_cancel", traced):
            witness = synthesize(algebra, cell, depth=1)
        self.assertTrue(validate_witness(algebra, witness, 1))
        self.assertIn(((1, 3), (1, 2)), nested)
        for outer, inner in nested:
            self.assertLess(inner, outer)


class DeepSynthesisTests(SimpleTestCase):

    def test_binary_composite_at_depth_two(self):
        space = path_set()
        algebra = marked(space, ["f", "g"], 3)
        f, g = cells(space, "f", "g")
        witness = synthesize(algebra, binary(algebra, f, g), depth=2)
        self.assertEqual(witness.depth, 2)
        self.assertEqual(witness_problems(algebra, witness, 2), [])

    @settings(max_examples=10, deadline=None)
    @given(st.randoms(use_true_random=False))
    def test_random_marked_pastings(self, rng):
        algebra, cell = random_marked_pasting(rng, 1)
        witness = synthesize(algebra, cell, depth=1)
        self.assertEqual(witness.subject, algebra.evaluate(cell))
        self.assertEqual(witness_problems(algebra, witness, 1), [])
