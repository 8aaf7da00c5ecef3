"""A small language for string-diagram morphisms on a Frobenius algebra X.

Grammar (whitespace-insensitive)::

    expr   := tensor ("." tensor)*
    tensor := atom ("ox" atom)*
    atom   := "id" | "m" | "e" | "delta" | "eps" | "ev" | "coev"
            | "#" NAME | "(" expr ")"

``g . f`` means g o f: **f is applied first**, as with function composition.
``ox`` is the tensor product and binds tighter than ``.``. Composition is
left-associative. Atoms denote maps X^p -> X^q with arities

    id (1,1)  m (2,1)  e (0,1)  delta (1,2)  eps (1,0)  ev (2,0)  coev (0,2)

and ``#name`` (1,1) refers to an endomorphism supplied at evaluation time.
ev = eps o m and coev = delta o e.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Mapping

import numpy as np

from .frobenius import AlgebraMismatchError, Endo, FrobAlgebra
from .linalg import dot, first_difference, identity, kron

ATOMS = {
    "id": (1, 1),
    "m": (2, 1),
    "e": (0, 1),
    "delta": (1, 2),
    "eps": (1, 0),
    "ev": (2, 0),
    "coev": (0, 2),
}

MAX_ARITY = 6


class DSLError(ValueError):
    """Base class; ``offset`` is a 0-based byte offset into the source text."""

    def __init__(self, message: str, offset: int | None = None):
        self.offset = offset
        where = f" at offset {offset}" if offset is not None else ""
        super().__init__(f"{message}{where}")


class ParseError(DSLError):
    pass


class ArityError(DSLError):
    pass


class EvalError(DSLError):
    pass


# -- AST -----------------------------------------------------------------


@dataclass(frozen=True)
class Atom:
    name: str
    offset: int = field(default=0, compare=False)


@dataclass(frozen=True)
class Ref:
    name: str
    offset: int = field(default=0, compare=False)


@dataclass(frozen=True)
class Compose:
    outer: "Expr"
    inner: "Expr"
    offset: int = field(default=0, compare=False)


@dataclass(frozen=True)
class Tensor:
    left: "Expr"
    right: "Expr"
    offset: int = field(default=0, compare=False)


Expr = Atom | Ref | Compose | Tensor


def to_text(expr: Expr) -> str:
    """Canonical text; ``parse(to_text(e)) == e``."""
    if isinstance(expr, Atom):
        return expr.name
    if isinstance(expr, Ref):
        return f"#{expr.name}"
    if isinstance(expr, Tensor):
        left = to_text(expr.left)
        right = to_text(expr.right)
        if isinstance(expr.left, Compose):
            left = f"({left})"
        if isinstance(expr.right, (Compose, Tensor)):
            right = f"({right})"
        return f"{left} ox {right}"
    outer = to_text(expr.outer)
    inner = to_text(expr.inner)
    if isinstance(expr.outer, Tensor):
        outer = f"({outer})"
    if isinstance(expr.inner, (Compose, Tensor)):
        inner = f"({inner})"
    return f"{outer} . {inner}"


# -- lexer and parser ------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(?P<ref>#[A-Za-z_][A-Za-z0-9_]*)|(?P<name>[A-Za-z_][A-Za-z0-9_]*)|(?P<op>[.()]))")


def tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens = []
    pos = 0
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        match = _TOKEN.match(text, pos)
        if match is None or match.end() == pos:
            bad = pos + (len(text[pos:]) - len(text[pos:].lstrip()))
            raise ParseError(f"unexpected character {text[bad]!r}", bad)
        kind = match.lastgroup
        value = match.group(kind)
        tokens.append((kind, value, match.start(kind)))
        pos = match.end()
    tokens.append(("end", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.tokens = tokenize(text)
        self.pos = 0

    def peek(self):
        return self.tokens[self.pos]

    def take(self):
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def parse(self) -> Expr:
        expr = self.expr()
        kind, value, offset = self.peek()
        if kind != "end":
            if value == ")":
                raise ParseError("unbalanced ')'", offset)
            raise ParseError(f"unexpected {value!r}", offset)
        return expr

    def expr(self) -> Expr:
        node = self.tensor()
        while self.peek()[1] == "." and self.peek()[0] == "op":
            _, _, offset = self.take()
            node = Compose(node, self.tensor(), offset)
        return node

    def tensor(self) -> Expr:
        node = self.atom()
        while self.peek()[0] == "name" and self.peek()[1] == "ox":
            _, _, offset = self.take()
            node = Tensor(node, self.atom(), offset)
        return node

    def atom(self) -> Expr:
        kind, value, offset = self.take()
        if kind == "ref":
            return Ref(value[1:], offset)
        if kind == "name":
            if value not in ATOMS:
                raise ParseError(f"unknown atom {value!r}", offset)
            return Atom(value, offset)
        if value == "(":
            inner = self.expr()
            k, v, off = self.take()
            if v != ")":
                raise ParseError("unbalanced '(': expected ')'", off)
            return inner
        if kind == "end":
            raise ParseError("unexpected end of input", offset)
        raise ParseError(f"unexpected {value!r}", offset)


def parse(text: str) -> Expr:
    return _Parser(text).parse()


# -- typing ---------------------------------------------------------------


def typecheck(expr: Expr, max_arity: int = MAX_ARITY) -> tuple[int, int]:
    """(source, target) arities; raises ArityError naming the offending subexpression."""
    if isinstance(expr, Atom):
        p, q = ATOMS[expr.name]
    elif isinstance(expr, Ref):
        p, q = 1, 1
    elif isinstance(expr, Tensor):
        p1, q1 = typecheck(expr.left, max_arity)
        p2, q2 = typecheck(expr.right, max_arity)
        p, q = p1 + p2, q1 + q2
    else:
        p_in, q_in = typecheck(expr.inner, max_arity)
        p_out, q_out = typecheck(expr.outer, max_arity)
        if q_in != p_out:
            raise ArityError(
                f"cannot compose {to_text(expr.outer)!r} (source {p_out}) after "
                f"{to_text(expr.inner)!r} (target {q_in})",
                expr.offset,
            )
        p, q = p_in, q_out
    if p + q > max_arity:
        raise ArityError(f"{to_text(expr)!r} has arity ({p},{q}) above the cap {max_arity}",
                         expr.offset)
    return p, q


def references(expr: Expr) -> set[str]:
    if isinstance(expr, Ref):
        return {expr.name}
    if isinstance(expr, Atom):
        return set()
    if isinstance(expr, Tensor):
        return references(expr.left) | references(expr.right)
    return references(expr.outer) | references(expr.inner)


# -- evaluation -----------------------------------------------------------


@dataclass(frozen=True, eq=False)
class TensorMap:
    """A linear map X^p -> X^q as a (d^q, d^p) array."""

    source: int
    target: int
    array: np.ndarray

    def __post_init__(self):
        rows, cols = self.array.shape
        if (self.target == 0 and rows != 1) or (self.source == 0 and cols != 1):
            raise ValueError("the unit object has dimension 1")

    def __eq__(self, other):
        if not isinstance(other, TensorMap):
            return NotImplemented
        return (
            (self.source, self.target) == (other.source, other.target)
            and self.array.shape == other.array.shape
            and bool((self.array == other.array).all())
        )

    __hash__ = None

    def scalar(self):
        if (self.source, self.target) != (0, 0):
            raise ValueError("not a scalar")
        return self.array[0, 0]


def atom_array(name: str, algebra: FrobAlgebra) -> np.ndarray:
    d = algebra.dim
    if name == "id":
        return identity(d)
    if name == "m":
        return algebra.mul_matrix
    if name == "e":
        return algebra.unit.reshape(d, 1)
    if name == "delta":
        return algebra.comul_matrix
    if name == "eps":
        return algebra.counit.reshape(1, d)
    if name == "ev":
        return algebra.counit.reshape(1, d).dot(algebra.mul_matrix)
    if name == "coev":
        return algebra.comul_matrix.dot(algebra.unit.reshape(d, 1))
    raise KeyError(name)


def evaluate(expr: Expr | str, algebra: FrobAlgebra,
             bindings: Mapping[str, Endo] | None = None,
             max_arity: int = MAX_ARITY) -> TensorMap:
    """Exact dense evaluation: composition is a matrix product, tensor a Kronecker product."""
    if isinstance(expr, str):
        expr = parse(expr)
    typecheck(expr, max_arity)
    bindings = dict(bindings or {})
    for name, endo in bindings.items():
        if not endo.algebra.same_as(algebra):
            raise AlgebraMismatchError(f"binding #{name} is an endomorphism of a different algebra")
    return _eval(expr, algebra, bindings)


def _eval(expr: Expr, algebra: FrobAlgebra, bindings) -> TensorMap:
    if isinstance(expr, Atom):
        p, q = ATOMS[expr.name]
        return TensorMap(p, q, atom_array(expr.name, algebra))
    if isinstance(expr, Ref):
        if expr.name not in bindings:
            raise EvalError(f"unbound name #{expr.name}", expr.offset)
        return TensorMap(1, 1, bindings[expr.name].matrix)
    if isinstance(expr, Tensor):
        a = _eval(expr.left, algebra, bindings)
        b = _eval(expr.right, algebra, bindings)
        return TensorMap(a.source + b.source, a.target + b.target, kron(a.array, b.array))
    g = _eval(expr.outer, algebra, bindings)
    f = _eval(expr.inner, algebra, bindings)
    return TensorMap(f.source, g.target, dot(g.array, f.array))


@dataclass
class EqualityReport:
    lhs: str
    rhs: str
    equal: bool
    arity: tuple[int, int]
    index: tuple | None = None
    lhs_value: object = None
    rhs_value: object = None

    def __bool__(self):
        return self.equal


def assert_equal(lhs: Expr | str, rhs: Expr | str, algebra: FrobAlgebra,
                 bindings: Mapping[str, Endo] | None = None,
                 max_arity: int = MAX_ARITY) -> EqualityReport:
    """Compare two expressions exactly; on failure report the first differing entry.

    The index is (row, column) into the (d^q, d^p) arrays, 0-based.
    """
    lhs = parse(lhs) if isinstance(lhs, str) else lhs
    rhs = parse(rhs) if isinstance(rhs, str) else rhs
    a_ar = typecheck(lhs, max_arity)
    b_ar = typecheck(rhs, max_arity)
    if a_ar != b_ar:
        raise ArityError(f"sides have different arities {a_ar} and {b_ar}")
    a = evaluate(lhs, algebra, bindings, max_arity)
    b = evaluate(rhs, algebra, bindings, max_arity)
    w = first_difference(a.array, b.array)
    if w is None:
        return EqualityReport(to_text(lhs), to_text(rhs), True, a_ar)
    return EqualityReport(to_text(lhs), to_text(rhs), False, a_ar, tuple(int(i) for i in w),
                          a.array[w], b.array[w])


# -- corpus files ----------------------------------------------------------


def read_corpus(text: str) -> list[tuple[int, str, str]]:
    """Parse ``lhs == rhs`` lines; ``#`` followed by whitespace or end starts a comment.

    A ``#`` immediately followed by a name is a reference, not a comment.
    """
    out = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = re.split(r"#(?![A-Za-z_])", raw, maxsplit=1)[0].strip()
        if not line:
            continue
        if "==" not in line:
            raise ParseError(f"line {lineno}: expected 'lhs == rhs'")
        lhs, rhs = line.split("==", 1)
        out.append((lineno, lhs.strip(), rhs.strip()))
    return out


AXIOM_CORPUS = """\
# unital algebra
m . (m ox id) == m . (id ox m)
m . (e ox id) == id
m . (id ox e) == id
# counital coalgebra
(delta ox id) . delta == (id ox delta) . delta
(eps ox id) . delta == id
(id ox eps) . delta == id
# Frobenius condition
(id ox m) . (delta ox id) == delta . m
delta . m == (m ox id) . (id ox delta)
# self-duality: zig-zag identities for ev = eps . m and coev = delta . e
(ev ox id) . (id ox coev) == id
(id ox ev) . (coev ox id) == id
ev == eps . m
coev == delta . e
"""

ER_CORPUS = """\
# exchange relations for a bound endomorphism #b
#b . m . (#b ox id) == m . (#b ox #b)
m . (#b ox #b) == #b . m . (id ox #b)
"""
