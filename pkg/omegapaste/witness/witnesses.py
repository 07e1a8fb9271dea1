"""
Invertibility witnesses and the store that collects them.

An InverseWitness for an n-cell u: x -> y holds an inverse v: y -> x,
the cancellation cells p: u*v -> id(x) and q: v*u -> id(y), and, when
its depth is positive, witnesses for p and q in turn.
"""
import logging
import threading
from dataclasses import dataclass, replace
from functools import cached_property

from schemes.exceptions import OmegaError
from schemes.values import Value

from .exceptions import InvalidWitness

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class InverseWitness(Value):
    """
    Fields:
        subject (cell):
            The n-cell u: x -> y being witnessed.

        inverse (cell):
            v: y -> x.

        p, q (cell):
            (n+1)-cells u*v -> id(x) and v*u -> id(y).

        sub_p, sub_q (InverseWitness | None):
            Witnesses for p and q; both absent at depth 0.
    """
    subject: object
    inverse: object
    p: object
    q: object
    sub_p: object = None
    sub_q: object = None

    @cached_property
    def depth(self):
        if self.sub_p is None or self.sub_q is None:
            return 0
        return 1 + min(self.sub_p.depth, self.sub_q.depth)

    def triple(self):
        return self.inverse, self.p, self.q

    def __str__(self):
        return f"<witness {self.subject} depth={self.depth}>"


def flip(witness):
    """The same data read as a witness for the inverse."""
    return InverseWitness(
        witness.inverse, witness.subject,
        witness.q, witness.p,
        witness.sub_q, witness.sub_p,
    )


def truncate(witness, depth):
    """Drop every sub-witness below ``depth`` levels."""
    if depth <= 0:
        return replace(witness, sub_p=None, sub_q=None)
    return replace(
        witness,
        sub_p=truncate(witness.sub_p, depth - 1),
        sub_q=truncate(witness.sub_q, depth - 1),
    )


# ------------------------------------------------------------
# Validation
# ------------------------------------------------------------
def _equations(algebra, w):
    u, v = w.subject, w.inverse
    yield "s(inverse) = t(subject)", lambda: algebra.source(v), lambda: algebra.target(u)
    yield "t(inverse) = s(subject)", lambda: algebra.target(v), lambda: algebra.source(u)
    yield "s(p) = subject * inverse", lambda: algebra.source(w.p), lambda: algebra.compose(u, v)
    yield "t(p) = id(s(subject))", lambda: algebra.target(w.p), lambda: algebra.identity(algebra.source(u))
    yield "s(q) = inverse * subject", lambda: algebra.source(w.q), lambda: algebra.compose(v, u)
    yield "t(q) = id(t(subject))", lambda: algebra.target(w.q), lambda: algebra.identity(algebra.target(u))


def _check(algebra, w, depth, path, problems):
    try:
        n = algebra.dim(w.subject)
    except OmegaError as exc:
        problems.append(f"{path}subject: {exc.message}")
        return
    if n == 0:
        problems.append(f"{path}subject {w.subject} is a 0-cell")
        return
    for name, left, right in _equations(algebra, w):
        try:
            if left() != right():
                problems.append(f"{path}{name} fails")
        except OmegaError as exc:
            problems.append(f"{path}{name}: {exc.message}")
    if depth <= 0:
        return
    for name, sub, cell in (("sub_p", w.sub_p, w.p), ("sub_q", w.sub_q, w.q)):
        if sub is None:
            problems.append(f"{path}{name} missing with {depth} levels still required")
        elif sub.subject != cell:
            problems.append(f"{path}{name} witnesses {sub.subject}, not {cell}")
        else:
            _check(algebra, sub, depth - 1, f"{path}{name}.", problems)


def witness_problems(algebra, witness, depth=None):
    """Every failing boundary equation, down to ``depth`` levels."""
    problems = []
    _check(algebra, witness, witness.depth if depth is None else depth, "", problems)
    return problems


def validate_witness(algebra, witness, depth=None):
    problems = witness_problems(algebra, witness, depth)
    for problem in problems:
        logger.debug("witness for %s: %s", witness.subject, problem)
    return not problems


# ------------------------------------------------------------
# Store
# ------------------------------------------------------------
class WitnessStore:
    """
    Validated witnesses keyed by their subject.

    The store only grows; a subject keeps its deepest witness. Publication
    validates first and then swaps the entry in under a lock.
    """

    def __init__(self, algebra, witnesses=()):
        self.algebra = algebra
        self._witnesses = {}
        self._lock = threading.Lock()
        for witness in witnesses:
            self.publish(witness)

    def __repr__(self):
        return f"<WitnessStore {len(self)} witnesses>"

    def publish(self, witness):
        problems = witness_problems(self.algebra, witness)
        if problems:
            raise InvalidWitness("; ".join(problems))
        with self._lock:
            current = self._witnesses.get(witness.subject)
            if current is None or current.depth < witness.depth:
                self._witnesses[witness.subject] = witness
        logger.debug("published witness for %s at depth %d", witness.subject, witness.depth)
        return witness

    def lookup(self, cell, depth=0):
        """A witness for ``cell`` cut to ``depth``, or None."""
        with self._lock:
            witness = self._witnesses.get(cell)
        if witness is None or witness.depth < depth:
            return None
        return truncate(witness, depth)

    def __contains__(self, cell):
        return cell in self._witnesses

    def __len__(self):
        return len(self._witnesses)

    def __iter__(self):
        with self._lock:
            return iter(list(self._witnesses.values()))
