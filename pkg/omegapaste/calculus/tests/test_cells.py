from django.test import SimpleTestCase

from calculus.algebra import FreeAlgebra
from calculus.cells import FormalInv, FormalP, FormalQ, extend_with_marks, free_carrier, support
from calculus.exceptions import MarkDimZero, UnknownAtom
from calculus.serializers import MarkedCarrierSerializer
from schemes.tests.fixtures import PATH, cells, path_set


class MarkedCarrierTests(SimpleTestCase):

    def setUp(self):
        self.space = path_set()
        self.a, self.b, self.f, self.g = cells(self.space, "a", "b", "f", "g")
        self.carrier = extend_with_marks(self.space, ["f"], depth=1)
        self.algebra = FreeAlgebra(self.carrier)

    def test_no_marks(self):
        plain = extend_with_marks(self.space)
        self.assertEqual(plain.marks, frozenset())
        self.assertFalse(plain.has_atoms(self.f))
        self.assertIs(free_carrier(plain), plain)

    def test_atoms_of_a_marked_cell(self):
        inv, p, q = self.carrier.atoms(self.f)
        self.assertEqual((inv, p, q), (FormalInv(self.f), FormalP(self.f), FormalQ(self.f)))
        self.assertEqual(self.carrier.source(inv), self.b)
        self.assertEqual(self.carrier.target(inv), self.a)
        self.assertEqual(self.carrier.source(p), self.algebra.compose(self.f, inv))
        self.assertEqual(self.carrier.target(p), self.algebra.identity(self.a))
        self.assertEqual(self.carrier.source(q), self.algebra.compose(inv, self.f))
        self.assertEqual(self.carrier.target(q), self.algebra.identity(self.b))
        self.assertEqual(self.carrier.dim(p), 2)

    def test_atoms_of_the_inverse(self):
        inv = FormalInv(self.f)
        self.assertEqual(self.carrier.atoms(inv), (self.f, FormalQ(self.f), FormalP(self.f)))
        with self.assertRaises(UnknownAtom):
            self.carrier.dim(FormalInv(inv))

    def test_depth_limits_atoms(self):
        with self.assertRaises(UnknownAtom):
            self.carrier.atoms(FormalP(self.f))
        with self.assertRaises(UnknownAtom):
            self.carrier.atoms(self.g)
        deeper = extend_with_marks(self.space, ["f"], depth=2)
        inv, p, q = deeper.atoms(FormalP(self.f))
        self.assertEqual(deeper.dim(inv), 2)
        self.assertEqual(deeper.source(inv), deeper.identity(self.a))
        self.assertEqual(deeper.target(p), deeper.identity(deeper.compose(self.f, FormalInv(self.f))))
        self.assertEqual(deeper.level(q), -1)

    def test_invalid_marks(self):
        with self.assertRaises(MarkDimZero):
            extend_with_marks(self.space, ["a"])
        with self.assertRaises(UnknownAtom):
            extend_with_marks(self.space, ["missing"])

    def test_support(self):
        inv = FormalInv(self.f)
        cell = self.algebra.compose(self.algebra.compose(self.f, inv), self.f)
        self.assertEqual(support(cell), frozenset((self.f,)))
        self.assertEqual(support(self.algebra.compose(self.f, self.g)), frozenset((self.f, self.g)))

    def test_printing(self):
        inv = FormalInv(self.f)
        self.assertEqual(str(self.algebra.compose(self.f, inv)), "(comp f (inv f))")
        self.assertEqual(str(self.algebra.identity(self.a)), "(id a)")
        self.assertEqual(str(FormalP(self.f)), "(p f)")


class MarkedCarrierSerializerTests(SimpleTestCase):

    def test_valid(self):
        serializer = MarkedCarrierSerializer(data={**PATH, "marks": ["f"], "depth": 2})
        self.assertTrue(serializer.is_valid(), serializer.errors)
        carrier = serializer.validated_data["carrier"]
        self.assertEqual(carrier.depth, 2)
        self.assertEqual(MarkedCarrierSerializer(carrier).data["marks"], ["f"])

    def test_marked_point(self):
        serializer = MarkedCarrierSerializer(data={**PATH, "marks": ["a"]})
        self.assertFalse(serializer.is_valid())
        self.assertEqual(serializer.errors["non_field_errors"][0].code, "mark_dim_zero")
