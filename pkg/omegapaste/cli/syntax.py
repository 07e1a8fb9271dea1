"""
Text formats for schemes, instructions, cells, diagrams and witnesses.

Grammars (whitespace-insensitive):

    scheme       [2,1,2,2 / 0,0,1]   [0]@3   zz[-1,0,1,0,-1]   [[ ],[[ ]]]
    instruction  (e n)  (sp K)  (kappa SRC TGT K)  (mu HEAD (ARG ...))
                 (coh SRC TGT K)  (delta i TERM)
    cell         NAME  (inv C)  (p C)  (q C)  (id C)  (comp C C)  (xi INSTR (C ...))
    diagram      [C, ... / C, ...] : K
    witness      (witness SUBJECT INVERSE P Q SUB_P|nil SUB_Q|nil)

A scheme without ``@n`` has the dimension of its highest top. A NAME is
a letter (any script) or underscore followed by letters, digits,
underscores or primes; names are resolved against the carrier the reader
was given. The printers are the ``str`` of each value, so printing and
parsing round-trip.
"""
import logging
import re
from typing import NamedTuple

from calculus.algebra import LCell
from calculus.cells import Composite, FormalInv, FormalP, FormalQ, xi
from calculus.instructions import (
    Unit,
    coherence_instr,
    delta_instr,
    instr_diagram,
    kappa,
    mu_instr,
    sp,
)
from schemes.exceptions import DanglingBoundary
from schemes.globular import CELL_NAME
from schemes.pasting import (
    PastingScheme,
    SchemeCell,
    convert_encoding,
    format_nested,
    nested_to_zigzag,
    zigzag_to_table,
)
from schemes.strict import eta_T, validate_diagram
from witness.witnesses import InverseWitness

from .exceptions import ParseError

logger = logging.getLogger(__name__)

_TOKEN = re.compile(rf"(?P<int>-?\d+)|(?P<name>{CELL_NAME.pattern})|(?P<punct>[()\[\],/@:])")
_SPACE = re.compile(r"\s*")

_ATOMS = {"inv": FormalInv, "p": FormalP, "q": FormalQ}


class Token(NamedTuple):
    kind: str
    value: object
    line: int
    column: int


def _position(text, pos):
    line = text.count("\n", 0, pos) + 1
    column = pos - (text.rfind("\n", 0, pos) + 1) + 1
    return line, column


def tokenize(text):
    """Integers, names and punctuation, closed by an ``end`` token."""
    tokens = []
    pos = _SPACE.match(text).end()
    while pos < len(text):
        match = _TOKEN.match(text, pos)
        if match is None:
            raise ParseError(f"unexpected character {text[pos]!r}", *_position(text, pos))
        kind = match.lastgroup
        value = int(match.group()) if kind == "int" else match.group()
        tokens.append(Token(kind, value, *_position(text, pos)))
        pos = _SPACE.match(text, match.end()).end()
    tokens.append(Token("end", None, *_position(text, pos)))
    return tokens


def _describe(token):
    return "end of input" if token.kind == "end" else repr(str(token.value))


class Reader:
    """A cursor over the tokens of one input, with the carrier names resolve in."""

    def __init__(self, text, carrier=None):
        self.tokens = tokenize(text)
        self.index = 0
        self.carrier = carrier

    def peek(self, offset=0):
        return self.tokens[min(self.index + offset, len(self.tokens) - 1)]

    def next(self):
        token = self.peek()
        if token.kind != "end":
            self.index += 1
        return token

    def at(self, value, offset=0):
        token = self.peek(offset)
        return token.kind in ("name", "punct") and token.value == value

    def fail(self, message, token=None):
        token = token or self.peek()
        return ParseError(message, token.line, token.column)

    def expect(self, value):
        token = self.next()
        if token.kind not in ("name", "punct") or token.value != value:
            raise self.fail(f"expected {value!r}, found {_describe(token)}", token)
        return token

    def integer(self):
        token = self.next()
        if token.kind != "int":
            raise self.fail(f"expected an integer, found {_describe(token)}", token)
        return token.value

    def name(self):
        token = self.next()
        if token.kind != "name":
            raise self.fail(f"expected a name, found {_describe(token)}", token)
        return token

    def finish(self, value):
        if self.peek().kind != "end":
            raise self.fail(f"unexpected {_describe(self.peek())} after the input")
        return value


def _separated(reader, read):
    items = [read(reader)]
    while reader.at(","):
        reader.next()
        items.append(read(reader))
    return items


def _group(reader, read):
    """``( item ... )``"""
    reader.expect("(")
    items = []
    while not reader.at(")"):
        if reader.peek().kind == "end":
            raise reader.fail("unclosed '('")
        items.append(read(reader))
    reader.next()
    return items


# ------------------------------------------------------------
# Schemes
# ------------------------------------------------------------
def _nested_tail(reader):
    children = []
    if reader.at("]"):
        reader.next()
        return ()
    while True:
        reader.expect("[")
        children.append(_nested_tail(reader))
        if reader.at(","):
            reader.next()
            continue
        reader.expect("]")
        return tuple(children)


def read_scheme(reader):
    """A scheme cell and the encoding it was written in."""
    if reader.at("zz"):
        reader.next()
        reader.expect("[")
        seq = _separated(reader, Reader.integer)
        reader.expect("]")
        table, encoding = zigzag_to_table(seq), "zigzag"
    else:
        reader.expect("[")
        if reader.at("[") or reader.at("]"):
            table, encoding = zigzag_to_table(nested_to_zigzag(_nested_tail(reader))), "nested"
        else:
            tops = _separated(reader, Reader.integer)
            bottoms = []
            if reader.at("/"):
                slash = reader.next()
                if reader.at("]"):
                    raise reader.fail("empty bottoms row; a rank-0 scheme is written [k]", slash)
                bottoms = _separated(reader, Reader.integer)
            reader.expect("]")
            table, encoding = PastingScheme(tuple(tops), tuple(bottoms)), "table"
    dim = max(table.tops)
    if reader.at("@"):
        reader.next()
        dim = reader.integer()
    return SchemeCell(table, dim), encoding


def format_scheme(cell, encoding="table"):
    """Print a scheme; ``@n`` is added only when n is not the highest top."""
    if encoding == "zigzag":
        text = "zz[" + ",".join(str(v) for v in convert_encoding(cell, "table", "zigzag")) + "]"
    elif encoding == "nested":
        text = format_nested(convert_encoding(cell, "table", "nested"))
    else:
        text = str(cell.scheme)
    if cell.dim != max(cell.tops):
        text += f"@{cell.dim}"
    return text


# ------------------------------------------------------------
# Instructions
# ------------------------------------------------------------
def read_instruction(reader):
    reader.expect("(")
    head = reader.name()
    if head.value == "e":
        term = Unit(reader.integer())
    elif head.value == "sp":
        term = sp(read_scheme(reader)[0])
    elif head.value in ("kappa", "coh"):
        src = read_instruction(reader)
        tgt = read_instruction(reader)
        k = read_scheme(reader)[0]
        term = kappa(src, tgt, k) if head.value == "kappa" else coherence_instr(src, tgt, k)
    elif head.value == "mu":
        outer = read_instruction(reader)
        args = _group(reader, read_instruction)
        term = mu_instr(outer, instr_diagram(outer.arity, args))
    elif head.value == "delta":
        i = reader.integer()
        term = delta_instr(read_instruction(reader), i)
    else:
        raise reader.fail(f"unknown instruction form {head.value!r}", head)
    reader.expect(")")
    return term


# ------------------------------------------------------------
# Cells, LCells and diagrams
# ------------------------------------------------------------
def _named(reader, token):
    base = getattr(reader.carrier, "base", reader.carrier)
    matches = [c for c in base if c.name == token.value]
    if not matches:
        raise DanglingBoundary(f"no cell named {token.value!r}")
    if len(matches) > 1:
        raise reader.fail(f"{token.value!r} names cells in several dimensions", token)
    return matches[0]


def _xi_parts(reader):
    instr = read_instruction(reader)
    tops = _group(reader, read_cell)
    reader.expect(")")
    return instr, validate_diagram(reader.carrier, instr.arity, tops)


def read_cell(reader):
    carrier = reader.carrier
    if reader.peek().kind == "name":
        return _named(reader, reader.next())
    reader.expect("(")
    head = reader.name()
    if head.value == "xi":
        return xi(*_xi_parts(reader))
    if head.value in _ATOMS:
        cell = _ATOMS[head.value](read_cell(reader))
        carrier.dim(cell)  # UnknownAtom past the carrier's depth
    elif head.value == "id":
        cell = carrier.identity(read_cell(reader))
    elif head.value == "comp":
        left = read_cell(reader)
        cell = carrier.compose(left, read_cell(reader))
    else:
        raise reader.fail(f"unknown cell form {head.value!r}", head)
    reader.expect(")")
    return cell


def read_lcell(reader):
    """``(xi INSTR (C ...))`` as an LCell; any other cell is decomposed."""
    if reader.at("(") and reader.at("xi", 1):
        reader.next()
        reader.next()
        return LCell(*_xi_parts(reader))
    cell = read_cell(reader)
    if isinstance(cell, Composite):
        return LCell(cell.head, cell.diagram)
    return LCell(Unit(reader.carrier.dim(cell)), eta_T(reader.carrier, cell))


def read_diagram(reader):
    reader.expect("[")
    tops = _separated(reader, read_cell)
    bottoms = None
    if reader.at("/"):
        reader.next()
        bottoms = _separated(reader, read_cell)
    reader.expect("]")
    reader.expect(":")
    shape, _ = read_scheme(reader)
    return validate_diagram(reader.carrier, shape, tops, bottoms)


# ------------------------------------------------------------
# Witness traces
# ------------------------------------------------------------
def read_witness(reader):
    if reader.at("nil"):
        reader.next()
        return None
    reader.expect("(")
    reader.expect("witness")
    parts = [read_cell(reader) for _ in range(4)]
    subs = [read_witness(reader), read_witness(reader)]
    reader.expect(")")
    return InverseWitness(*parts, *subs)


def format_witness(witness):
    if witness is None:
        return "nil"
    parts = " ".join(str(c) for c in (witness.subject, witness.inverse, witness.p, witness.q))
    return f"(witness {parts} {format_witness(witness.sub_p)} {format_witness(witness.sub_q)})"


# ------------------------------------------------------------
# Entry points
# ------------------------------------------------------------
PARSERS = {
    "scheme": lambda reader: read_scheme(reader)[0],
    "instruction": read_instruction,
    "cell": read_cell,
    "lcell": read_lcell,
    "diagram": read_diagram,
    "witness": read_witness,
}

NEEDS_CARRIER = frozenset({"cell", "lcell", "diagram", "witness"})


def parse(text, kind, carrier=None):
    """Parse one complete value of ``kind``."""
    if kind not in PARSERS:
        raise ValueError(f"unknown input kind {kind!r}; expected one of {sorted(PARSERS)}")
    if kind in NEEDS_CARRIER and carrier is None:
        raise ValueError(f"{kind} input needs a carrier")
    reader = Reader(text, carrier)
    value = PARSERS[kind](reader)
    if value is None:
        raise reader.fail("a witness trace cannot be nil")
    logger.debug("parsed %s %s", kind, value)
    return reader.finish(value)


def parse_scheme_encoding(text):
    reader = Reader(text)
    return reader.finish(read_scheme(reader))


def format_value(value):
    if isinstance(value, SchemeCell):
        return format_scheme(value)
    if isinstance(value, InverseWitness):
        return format_witness(value)
    return str(value)
