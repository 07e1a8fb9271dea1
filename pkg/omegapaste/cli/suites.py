"""
Self-test suites behind ``omega selftest``.

Each suite is a list of named properties. A property draws its samples
from a ``random.Random`` that hypothesis controls, so the first failing
sample is shrunk before it is reported. The search is seeded from the
suite seed and the property name.
"""
import logging
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from itertools import repeat

from hypothesis import HealthCheck, Verbosity, find, settings, strategies as st
from hypothesis.errors import NoSuchExample

from calculus.algebra import FreeAlgebra, LCell, LCellAlgebra, delta_diagram, hom_cat
from calculus.cells import xi
from calculus.instructions import (
    Unit,
    binary_scheme,
    comp_instr,
    instr_boundary,
    instr_equal,
    kappa,
    normalize,
    sp,
)
from calculus.sampling import random_instruction, random_instruction_of_arity, random_two_level, tower
from schemes.exceptions import OmegaError
from schemes.globular import validate_globular_set
from schemes.pasting import (
    PastingScheme,
    SchemeCell,
    convert_encoding,
    delta_scheme,
    fdl_norm,
    lift_dim,
    realisation,
    scheme_boundary,
    transversal_components,
)
from schemes.sampling import random_cell, random_double_nest, random_full_cell, random_nest
from schemes.strict import (
    FreeStrict,
    colimit_flatten,
    diagram_boundary,
    eta_T,
    generic_diagram,
    lift_diagram,
    map_T,
    mu_T,
    validate_diagram,
)
from schemes.values import Side
from witness.sampling import marked_realisation, random_marked_pasting
from witness.synthesis import synthesize, witness_degenerate
from witness.witnesses import witness_problems

from .syntax import format_value, parse

logger = logging.getLogger(__name__)


def _describe(sample):
    if isinstance(sample, tuple):
        return " ".join(str(part) for part in sample)
    return str(sample)


@dataclass
class PropertyReport:
    name: str
    checked: int = 0
    failures: int = 0
    smallest: str = ""

    def record(self, sample, message):
        self.smallest = f"{_describe(sample)}: {message}"
        self.failures += 1


@dataclass
class SuiteReport:
    name: str
    properties: list = field(default_factory=list)

    @property
    def checked(self):
        return sum(p.checked for p in self.properties)

    @property
    def failures(self):
        return sum(p.failures for p in self.properties)

    @property
    def passed(self):
        return self.failures == 0

    def as_dict(self):
        return {
            "suite": self.name,
            "passed": self.passed,
            "checked": self.checked,
            "failures": [
                {"property": p.name, "count": p.failures, "smallest": p.smallest}
                for p in self.properties if p.failures
            ],
        }


def _message(check, value):
    try:
        return check(value)
    except OmegaError as exc:
        return f"{exc.code}: {exc.message}"


def _check(report, name, seed, count, sample, check):
    """
    Search ``count`` samples for one where ``check(value)`` returns a
    failure message; a failing sample is shrunk before it is recorded.
    """
    prop = PropertyReport(name)

    def fails(value):
        prop.checked += 1
        return bool(_message(check, value))

    options = settings(
        max_examples=count,
        deadline=None,
        database=None,
        suppress_health_check=list(HealthCheck),
        verbosity=Verbosity.quiet,
    )
    values = st.randoms(use_true_random=False).map(sample)
    try:
        smallest = find(values, fails, settings=options, random=random.Random(f"{seed}:{name}"))
    except NoSuchExample:
        pass
    else:
        prop.record(smallest, _message(check, smallest))
    report.properties.append(prop)


def _expect(actual, expected):
    if actual != expected:
        return f"got {actual}, expected {expected}"
    return None


# ------------------------------------------------------------
# Property suites
# ------------------------------------------------------------
def schemes_suite(report, seed, count, depth):
    def codecs(cell):
        for encoding in ("zigzag", "nested"):
            there = convert_encoding(cell, "table", encoding)
            back = convert_encoding(there, encoding, "table")
            if back != cell.scheme:
                return f"{encoding} round trip gave {back}"
        return None

    def boundaries(cell):
        for m in range(1, cell.dim):
            face = scheme_boundary(cell, m)
            for low in range(m):
                if scheme_boundary(face, low) != scheme_boundary(cell, low):
                    return f"s{low} of s{m} differs from s{low}"
        return None

    def components(cell):
        for m in range(cell.dim):
            covered = [p for i, j in transversal_components(cell, m) for p in range(i, j + 1)]
            high = [i for i, k in enumerate(cell.tops) if k > m]
            if covered != high:
                return f"components at {m} cover {covered}, not {high}"
        return None

    draw = lambda r: random_cell(r, 4, max_rank=5)  # noqa: E731
    _check(report, "codecs round trip", seed, count, draw, codecs)
    _check(report, "boundary of a boundary", seed, count, draw, boundaries)
    _check(report, "transversal components cover", seed, count, draw, components)


def monad_suite(report, seed, count, depth):
    def associative(nest):
        return _expect(mu_T(mu_T(nest)), mu_T(map_T(mu_T, nest)))

    def colimit(nest):
        return _expect(colimit_flatten(nest), mu_T(nest))

    def units(cell):
        space, diagram = generic_diagram(cell)
        outer = mu_T(eta_T(FreeStrict(space), diagram))
        inner = mu_T(map_T(lambda c: eta_T(space, c), diagram))
        return _expect(outer, diagram) or _expect(inner, diagram)

    _check(report, "associativity", seed, count, lambda r: random_double_nest(r, r.randint(0, 3)), associative)
    _check(report, "colimit oracle", seed, count, lambda r: random_nest(r, r.randint(0, 3), max_rank=3), colimit)
    _check(report, "unit laws", seed, count, lambda r: random_cell(r, r.randint(0, 3), max_rank=3), units)


def instruction_suite(report, seed, count, depth):
    def section(k):
        return _expect(sp(k).arity, k)

    def idempotent(term):
        once = normalize(term)
        if not instr_equal(once, normalize(once)):
            return "normalize is not idempotent"
        return None

    def globular(term):
        if term.dim < 2:
            return None
        for low in (Side.SRC, Side.TGT):
            faces = {instr_boundary(instr_boundary(term, side), low) for side in Side}
            if len(faces) != 1:
                return f"the {low.value} faces of the boundaries disagree"
        return None

    def printed(term):
        return _expect(parse(format_value(term), "instruction"), term)

    _check(report, "sp is a section of arity", seed, count, lambda r: random_cell(r, r.randint(0, 3)), section)
    _check(report, "normalize idempotent", seed, count, lambda r: random_instruction(r, r.randint(0, 3)), idempotent)
    _check(report, "boundaries globular", seed, count, lambda r: random_instruction(r, r.randint(2, 3)), globular)
    _check(report, "print then parse", seed, count, lambda r: random_instruction(r, r.randint(0, 2)), printed)


def algebra_suite(report, seed, count, depth):
    algebra = FreeAlgebra(tower(3))
    lifted = LCellAlgebra(algebra)

    def unit(cell):
        return _expect(algebra.evaluate(algebra.eta_cell(cell)), cell)

    def associative(outer):
        inner = map_T(lambda c: xi(c.instr, c.diagram), outer.diagram)
        return _expect(algebra.evaluate(LCell(outer.instr, inner)), algebra.evaluate(lifted.evaluate(outer)))

    def identities(cell):
        ident = algebra.identity(cell)
        return _expect(algebra.source(ident), cell) or _expect(algebra.target(ident), cell)

    generators = list(algebra.base)
    _check(report, "xi after eta", seed, min(count, len(generators) * 4), lambda r: r.choice(generators), unit)
    _check(report, "xi after L xi", seed, count, lambda r: random_two_level(r, algebra, r.randint(0, 2)), associative)
    _check(report, "identity boundaries", seed, count, lambda r: r.choice(generators), identities)


def witness_suite(report, seed, count, depth):
    degenerate_depth = 3 if depth is None else depth
    pasting_depth = 2 if depth is None else depth

    def degenerate_lcell(r):
        k = random_cell(r, r.randint(0, 1), max_rank=3)
        algebra, diagram = marked_realisation(k, 0)
        lifted = lift_dim(k)
        return algebra, LCell(random_instruction_of_arity(r, lifted), lift_diagram(diagram, lifted.dim))

    def degenerate(sample):
        algebra, cell = sample
        witness = witness_degenerate(algebra, cell, degenerate_depth)
        return "; ".join(witness_problems(algebra, witness, degenerate_depth)) or None

    def synthesized(sample):
        algebra, cell = sample
        witness = synthesize(algebra, cell, depth=pasting_depth)
        if witness.subject != algebra.evaluate(cell):
            return f"witness for {witness.subject}"
        return "; ".join(witness_problems(algebra, witness, pasting_depth)) or None

    def full_entry(r):
        k = random_full_cell(r, 3, max_rank=4)
        return k, r.choice(k.full_positions)

    def drops_one(sample):
        k, i = sample
        return _expect(fdl_norm(delta_scheme(k, i)), fdl_norm(k) - 1)

    _check(report, "degenerate witnesses validate", seed, count, degenerate_lcell, degenerate)
    _check(
        report, "synthesized witnesses validate", seed, count,
        lambda r: random_marked_pasting(r, pasting_depth), synthesized,
    )
    _check(report, "delta drops one full entry", seed, count, full_entry, drops_one)


# ------------------------------------------------------------
# Golden examples
# ------------------------------------------------------------
_TWO_DIAGRAM = {
    "max_dim": 2,
    "cells": {"0": ["a", "b", "c", "d"], "1": ["f", "g", "h", "i", "j", "k"], "2": ["alpha", "beta", "gamma"]},
    "src": {
        "1": {"f": "a", "g": "a", "h": "b", "i": "c", "j": "c", "k": "c"},
        "2": {"alpha": "f", "beta": "i", "gamma": "j"},
    },
    "tgt": {
        "1": {"f": "b", "g": "b", "h": "c", "i": "d", "j": "d", "k": "d"},
        "2": {"alpha": "g", "beta": "j", "gamma": "k"},
    },
}

_UNIT_EXAMPLE = {
    "max_dim": 2,
    "cells": {"0": ["a", "b", "c", "d"], "1": ["f", "g", "h", "i", "j", "k"], "2": ["alpha", "beta", "gamma"]},
    "src": {
        "1": {"f": "a", "g": "a", "h": "a", "i": "b", "j": "c", "k": "c"},
        "2": {"alpha": "f", "beta": "g", "gamma": "j"},
    },
    "tgt": {
        "1": {"f": "b", "g": "b", "h": "b", "i": "c", "j": "d", "k": "d"},
        "2": {"alpha": "g", "beta": "h", "gamma": "k"},
    },
}


def _scheme(tops, bottoms, dim=None):
    return SchemeCell(PastingScheme(tuple(tops), tuple(bottoms)), max(tops) if dim is None else dim)


def _names(cells):
    return [str(c) for c in cells]


def _faces(side):
    two = validate_globular_set(_TWO_DIAGRAM)
    named = {c.name: c for c in two if c.dim}
    diagram = validate_diagram(two, _scheme([2, 1, 2, 2], [0, 0, 1]), [named[n] for n in ("alpha", "h", "beta", "gamma")])
    face = diagram_boundary(diagram, 1, side)
    return _names(face.tops), _names(face.bottoms)


def _delta(index, variant):
    unit = validate_globular_set(_UNIT_EXAMPLE)
    algebra = FreeAlgebra(unit)
    named = {c.name: c for c in unit if c.dim}
    entries = (named["alpha"], algebra.identity(named["g"]), named["beta"], named["i"], named["gamma"])
    running = algebra.diagram(_scheme([2, 2, 2, 1, 2], [1, 1, 0, 0], 2), entries)
    result = delta_diagram(algebra, running, index, variant)
    return _names(result.tops), _names(result.bottoms)


def _hom_shift():
    two = validate_globular_set(_TWO_DIAGRAM)
    algebra = FreeAlgebra(two)
    c, d, beta, gamma = (two.cell(n, dim) for n, dim in (("c", 0), ("d", 0), ("beta", 2), ("gamma", 2)))
    return _expect(hom_cat(algebra, c, d).compose(beta, gamma), algebra.compose(beta, gamma))


_EXAMPLE = _scheme([2, 1, 2, 2], [0, 0, 1])
_WIDE = _scheme([3, 6, 5, 7, 2, 6], [2, 3, 4, 0, 1], 7)
_ID_G = "(id g)"

GOLDEN = {
    "wide boundary": lambda: _expect(scheme_boundary(_WIDE, 4), _scheme([3, 4, 4, 2, 4], [2, 3, 0, 1], 4)),
    "wide components": lambda: _expect(transversal_components(_WIDE, 4), [(1, 1), (2, 3), (5, 5)]),
    "example to zig-zag": lambda: _expect(
        convert_encoding(_EXAMPLE, "table", "zigzag"), (-1, 0, 1, 2, 1, 0, 1, 0, 1, 2, 1, 2, 1, 0, -1),
    ),
    "nested to table": lambda: _expect(convert_encoding((((),), (), ((), ())), "nested", "table"), _EXAMPLE.scheme),
    "realisation counts": lambda: _expect(realisation(_EXAMPLE).cell_counts(), (4, 6, 3)),
    "printed example": lambda: _expect(str(_EXAMPLE.scheme), "[2,1,2,2 / 0,0,1]"),
    "s1 of the two-diagram": lambda: _expect(_faces(Side.SRC), (["f", "h", "i"], ["b", "c"])),
    "t1 of the two-diagram": lambda: _expect(_faces(Side.TGT), (["g", "h", "k"], ["b", "c"])),
    "delta exact at 1": lambda: _expect(_delta(1, "exact"), (["alpha", "beta", "i", "gamma"], ["g", "b", "c"])),
    "delta plus at 2": lambda: _expect(_delta(2, "plus"), (["alpha", _ID_G, "i", "gamma"], ["g", "b", "c"])),
    "delta minus at 4": lambda: _expect(
        _delta(4, "minus"), (["alpha", _ID_G, "beta", "i", "k"], ["g", "g", "b", "c"]),
    ),
    "composition in a hom": _hom_shift,
    "kappa of units is comp": lambda: _expect(kappa(Unit(0), Unit(0), binary_scheme(1)), comp_instr(1)),
}


def golden_suite(report, seed, count, depth):
    for name, case in GOLDEN.items():
        prop = PropertyReport(name, checked=1)
        try:
            message = case()
        except OmegaError as exc:
            message = f"{exc.code}: {exc.message}"
        if message:
            prop.record(name, message)
        report.properties.append(prop)


SUITES = {
    "schemes": schemes_suite,
    "monad": monad_suite,
    "instruction": instruction_suite,
    "algebra": algebra_suite,
    "witness": witness_suite,
    "golden": golden_suite,
}

# samples per property when no count is given
DEFAULT_COUNTS = {
    "schemes": 200,
    "monad": 500,
    "instruction": 1000,
    "algebra": 200,
    "witness": 100,
    "golden": len(GOLDEN),
}


def run_suite(name, seed, count=None, depth=None):
    report = SuiteReport(name)
    count = DEFAULT_COUNTS[name] if count is None else count
    SUITES[name](report, f"{seed}:{name}", count, depth)
    logger.info("suite %s: %d checked, %d failing", name, report.checked, report.failures)
    return report


def run_suites(names, seed=0, count=None, depth=None):
    """
    Run suites in worker processes; reports come back in the order asked
    for. ``count`` and ``depth`` default per suite.
    """
    unknown = [n for n in names if n not in SUITES]
    if unknown or not names:
        raise ValueError(f"unknown suite {unknown or names!r}; expected one of {sorted(SUITES)}")
    if len(names) == 1:
        return [run_suite(names[0], seed, count, depth)]
    with ProcessPoolExecutor(max_workers=len(names)) as pool:
        return list(pool.map(run_suite, names, repeat(seed), repeat(count), repeat(depth)))
