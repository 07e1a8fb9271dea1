from django.test import SimpleTestCase
from hypothesis import given, settings
from hypothesis import strategies as st

from calculus.algebra import FreeAlgebra
from calculus.cells import FormalInv, extend_with_marks
from calculus.exceptions import UnknownAtom
from calculus.instructions import Unit, comp_instr, compose_instr
from calculus.sampling import random_instruction
from cli.exceptions import ParseError
from cli.syntax import format_scheme, format_value, parse, parse_scheme_encoding, tokenize
from schemes.exceptions import DanglingBoundary, ZigzagViolation
from schemes.pasting import PastingScheme, SchemeCell, column
from schemes.sampling import random_cell
from schemes.strict import validate_diagram
from schemes.tests.fixtures import cells, path_set, two_diagram_set
from witness.synthesis import resolve_witness

EXAMPLE = SchemeCell(PastingScheme((2, 1, 2, 2), (0, 0, 1)), 2)


class TokenizeTests(SimpleTestCase):

    def test_positions(self):
        tokens = tokenize("(e\n  12)")
        self.assertEqual([t.value for t in tokens], ["(", "e", 12, ")", None])
        self.assertEqual((tokens[2].line, tokens[2].column), (2, 3))

    def test_names_in_any_script(self):
        tokens = tokenize("(comp α f')")
        self.assertEqual([t.value for t in tokens], ["(", "comp", "α", "f'", ")", None])
        self.assertEqual(tokens[2].kind, "name")

    def test_unexpected_character(self):
        with self.assertRaises(ParseError) as ctx:
            tokenize("[1;2]")
        self.assertEqual((ctx.exception.line, ctx.exception.column), (1, 3))


class SchemeSyntaxTests(SimpleTestCase):

    def test_table(self):
        self.assertEqual(parse("[2,1,2,2 / 0,0,1]", "scheme"), EXAMPLE)
        self.assertEqual(parse(" [ 0 ] @ 3 ", "scheme"), column(0, 3))

    def test_encodings(self):
        self.assertEqual(parse_scheme_encoding("zz[-1,0,1,0,-1]"), (column(1), "zigzag"))
        self.assertEqual(parse_scheme_encoding("[[[ ]],[ ],[[ ],[ ]]]"), (EXAMPLE, "nested"))
        self.assertEqual(parse_scheme_encoding("[ ]"), (column(0), "nested"))

    def test_format(self):
        self.assertEqual(format_scheme(EXAMPLE), "[2,1,2,2 / 0,0,1]")
        self.assertEqual(format_scheme(column(0, 3)), "[0]@3")
        self.assertEqual(
            format_scheme(EXAMPLE, "zigzag"),
            "zz[-1,0,1,2,1,0,1,0,1,2,1,2,1,0,-1]",
        )
        self.assertEqual(format_scheme(EXAMPLE, "nested"), "[[[ ]],[ ],[[ ],[ ]]]")

    @settings(max_examples=100, deadline=None)
    @given(st.randoms(use_true_random=False))
    def test_print_then_parse(self, rng):
        cell = random_cell(rng, rng.randint(0, 4), max_rank=4)
        for encoding in ("table", "zigzag", "nested"):
            self.assertEqual(parse_scheme_encoding(format_scheme(cell, encoding))[0].scheme, cell.scheme)
        self.assertEqual(parse(format_scheme(cell), "scheme"), cell)

    def test_missing_open_bracket(self):
        with self.assertRaises(ParseError) as ctx:
            parse("/ 0]", "scheme")
        self.assertEqual(ctx.exception.code, "parse_error")
        self.assertTrue(ctx.exception.message.startswith("1:1: expected '['"))

    def test_empty_bottoms(self):
        with self.assertRaises(ParseError) as ctx:
            parse("[0 / ]", "scheme")
        self.assertEqual(ctx.exception.column, 4)

    def test_trailing_input(self):
        with self.assertRaises(ParseError) as ctx:
            parse("[1] 2", "scheme")
        self.assertEqual(ctx.exception.column, 5)

    def test_semantic_errors_pass_through(self):
        with self.assertRaises(ZigzagViolation):
            parse("[1,1 / 1]", "scheme")


class InstructionSyntaxTests(SimpleTestCase):

    def test_comp(self):
        self.assertEqual(parse("(sp [1,1 / 0]@1)", "instruction"), comp_instr(1))
        self.assertEqual(str(comp_instr(1)), "(sp [1,1 / 0]@1)")
        self.assertEqual(parse("(kappa (e 0) (e 0) [1,1 / 0])", "instruction"), comp_instr(1))

    def test_forms(self):
        left = compose_instr(comp_instr(1), Unit(1))
        self.assertEqual(parse(str(left), "instruction"), left)
        self.assertEqual(parse("(e 2)", "instruction"), Unit(2))
        self.assertEqual(
            parse("(mu (sp [1,1 / 0]@1) ((e 1) (e 1)))", "instruction"),
            comp_instr(1),
        )

    def test_unknown_form(self):
        with self.assertRaises(ParseError) as ctx:
            parse("(nope 1)", "instruction")
        self.assertEqual(ctx.exception.column, 2)

    def test_multiline_position(self):
        with self.assertRaises(ParseError) as ctx:
            parse("(e\n  x)", "instruction")
        self.assertEqual((ctx.exception.line, ctx.exception.column), (2, 3))

    @settings(max_examples=100, deadline=None)
    @given(st.randoms(use_true_random=False))
    def test_print_then_parse(self, rng):
        term = random_instruction(rng, rng.randint(0, 3))
        self.assertEqual(parse(format_value(term), "instruction"), term)


class CellSyntaxTests(SimpleTestCase):

    def setUp(self):
        self.algebra = FreeAlgebra(extend_with_marks(path_set(), ["f"]))
        self.carrier = self.algebra.carrier
        self.a, self.f, self.g = cells(self.algebra.base, "a", "f", "g")

    def test_composites(self):
        fg = self.algebra.compose(self.f, self.g)
        self.assertEqual(parse("(comp f g)", "cell", self.carrier), fg)
        self.assertEqual(str(fg), "(comp f g)")
        self.assertEqual(parse("(id a)", "cell", self.carrier), self.algebra.identity(self.a))
        self.assertEqual(parse("(inv f)", "cell", self.carrier), FormalInv(self.f))

    def test_print_then_parse(self):
        fg = self.algebra.compose(self.f, self.g)
        for cell in (fg, self.algebra.identity(fg), self.algebra.compose(self.f, FormalInv(self.f))):
            self.assertEqual(parse(str(cell), "cell", self.carrier), cell)

    def test_lcell(self):
        lcell = parse("(comp f g)", "lcell", self.carrier)
        self.assertEqual(lcell.instr, comp_instr(1))
        self.assertEqual(parse(str(lcell), "lcell", self.carrier), lcell)
        self.assertEqual(parse("f", "lcell", self.carrier), self.algebra.eta_cell(self.f))

    def test_unknown_name(self):
        with self.assertRaises(DanglingBoundary):
            parse("(comp f x)", "cell", self.carrier)

    def test_atoms_need_a_mark(self):
        with self.assertRaises(UnknownAtom):
            parse("(inv g)", "cell", self.carrier)

    def test_needs_a_carrier(self):
        with self.assertRaises(ValueError):
            parse("f", "cell")
        with self.assertRaises(ValueError):
            parse("f", "tree")


class DiagramSyntaxTests(SimpleTestCase):

    def test_two_diagram(self):
        space = two_diagram_set()
        carrier = FreeAlgebra(space).carrier
        alpha, h, beta, gamma = cells(space, "alpha", "h", "beta", "gamma")
        diagram = validate_diagram(carrier, EXAMPLE, (alpha, h, beta, gamma))
        text = "[alpha, h, beta, gamma / b, c, j] : [2,1,2,2 / 0,0,1]"
        self.assertEqual(parse(text, "diagram", carrier), diagram)
        self.assertEqual(parse(str(diagram), "diagram", carrier), diagram)


class WitnessSyntaxTests(SimpleTestCase):

    def test_print_then_parse(self):
        algebra = FreeAlgebra(extend_with_marks(path_set(), ["f"], depth=2))
        (f,) = cells(algebra.base, "f")
        witness = resolve_witness(algebra, f, depth=1)
        text = format_value(witness)
        self.assertTrue(text.startswith("(witness f (inv f) (p f) (q f) (witness"))
        self.assertEqual(parse(text, "witness", algebra.carrier), witness)

    def test_nil_is_not_a_trace(self):
        algebra = FreeAlgebra(path_set())
        with self.assertRaises(ParseError):
            parse("nil", "witness", algebra.carrier)

