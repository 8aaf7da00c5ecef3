"""Exact rationals and multivariate polynomials over Q.

Rationals are :class:`fractions.Fraction` throughout; ``Rat`` is an alias.
Polynomials are immutable maps from exponent tuples to nonzero rationals,
tied to a :class:`Ring` that fixes the variable names and monomial order.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from numbers import Rational
from typing import Iterable, Mapping

Rat = Fraction

ORDERS = ("degrevlex", "lex")


class RingMismatchError(ValueError):
    pass


def rat(value) -> Fraction:
    """Coerce ints, Fractions and ``"p/q"`` strings to a Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, (int, str)):
        return Fraction(value)
    if isinstance(value, Rational):
        return Fraction(value.numerator, value.denominator)
    raise TypeError(f"not an exact rational: {value!r}")


def format_rat(value) -> str:
    """Serialize as ``"p/q"`` with q > 0 and gcd(p, q) = 1 (q = 1 included)."""
    q = rat(value)
    return f"{q.numerator}/{q.denominator}"


def _degrevlex_key(exps: tuple[int, ...]):
    return (sum(exps), tuple(-e for e in reversed(exps)))


def _lex_key(exps: tuple[int, ...]):
    return exps


class Ring:
    """Q[names] with a fixed monomial order.

    Rings compare equal when names and order agree, so independently built
    rings for the same system interoperate.
    """

    __slots__ = ("names", "order", "nvars", "key", "_index")

    def __init__(self, names: Iterable[str], order: str = "degrevlex"):
        names = tuple(names)
        if not names:
            raise ValueError("a ring needs at least one variable")
        if len(set(names)) != len(names):
            raise ValueError("duplicate variable names")
        if order not in ORDERS:
            raise ValueError(f"unknown monomial order {order!r}")
        self.names = names
        self.order = order
        self.nvars = len(names)
        base = _degrevlex_key if order == "degrevlex" else _lex_key
        self.key = lru_cache(maxsize=None)(base)
        self._index = {name: i for i, name in enumerate(names)}

    def __eq__(self, other):
        return (
            isinstance(other, Ring)
            and self.names == other.names
            and self.order == other.order
        )

    def __hash__(self):
        return hash((self.names, self.order))

    def __repr__(self):
        return f"Ring({len(self.names)} vars, {self.order})"

    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise KeyError(f"no variable {name!r} in ring") from None

    def var(self, name: str) -> "MPoly":
        exps = [0] * self.nvars
        exps[self.index(name)] = 1
        return MPoly(self, {tuple(exps): Fraction(1)})

    def gens(self) -> list["MPoly"]:
        return [self.var(name) for name in self.names]

    def const(self, c) -> "MPoly":
        c = rat(c)
        if c == 0:
            return MPoly(self, {})
        return MPoly(self, {(0,) * self.nvars: c})

    @property
    def zero(self) -> "MPoly":
        return MPoly(self, {})

    @property
    def one(self) -> "MPoly":
        return self.const(1)

    def with_order(self, order: str) -> "Ring":
        return Ring(self.names, order)


class MPoly:
    """Immutable polynomial in canonical form (no zero coefficients)."""

    __slots__ = ("ring", "terms", "_hash")

    def __init__(self, ring: Ring, terms: Mapping[tuple[int, ...], object] | None = None):
        self.ring = ring
        clean = {}
        for exps, c in (terms or {}).items():
            exps = tuple(exps)
            if len(exps) != ring.nvars:
                raise ValueError(
                    f"exponent vector of length {len(exps)} in a ring of {ring.nvars} variables"
                )
            if any(e < 0 for e in exps):
                raise ValueError("negative exponent")
            c = rat(c)
            if c:
                clean[exps] = c
        self.terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, ring: Ring, terms: dict) -> "MPoly":
        # trusted constructor: terms already canonical
        p = object.__new__(cls)
        p.ring = ring
        p.terms = terms
        p._hash = None
        return p

    # coercion -----------------------------------------------------------

    def _coerce(self, other) -> "MPoly":
        if isinstance(other, MPoly):
            if other.ring != self.ring:
                raise RingMismatchError(f"{self.ring!r} vs {other.ring!r}")
            return other
        if isinstance(other, (int, Fraction, Rational)):
            return self.ring.const(other)
        return NotImplemented

    # arithmetic ---------------------------------------------------------

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self.terms)
        for m, c in other.terms.items():
            s = out.get(m, 0) + c
            if s:
                out[m] = s
            else:
                out.pop(m, None)
        return MPoly._raw(self.ring, out)

    __radd__ = __add__

    def __neg__(self):
        return MPoly._raw(self.ring, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, Rational)) and not isinstance(other, MPoly):
            c = rat(other)
            if not c:
                return MPoly._raw(self.ring, {})
            return MPoly._raw(self.ring, {m: v * c for m, v in self.terms.items()})
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out: dict = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = tuple(a + b for a, b in zip(m1, m2))
                s = out.get(m, 0) + c1 * c2
                if s:
                    out[m] = s
                else:
                    out.pop(m, None)
        return MPoly._raw(self.ring, out)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, MPoly):
            if other.is_constant() and not other.is_zero():
                return self * (1 / other.constant_coeff())
            raise TypeError("division by a non-constant polynomial")
        c = rat(other)
        if not c:
            raise ZeroDivisionError("polynomial division by zero")
        return self * (1 / c)

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            raise ValueError("exponent must be a nonnegative integer")
        result = self.ring.one
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    # comparison ---------------------------------------------------------

    def __eq__(self, other):
        if isinstance(other, MPoly):
            return self.ring == other.ring and self.terms == other.terms
        if isinstance(other, (int, Fraction, Rational)):
            c = rat(other)
            if not c:
                return not self.terms
            return self.terms == {(0,) * self.ring.nvars: c}
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ring, frozenset(self.terms.items())))
        return self._hash

    def __bool__(self):
        return bool(self.terms)

    # inspection ---------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return not self.terms or set(self.terms) == {(0,) * self.ring.nvars}

    def constant_coeff(self) -> Fraction:
        return self.terms.get((0,) * self.ring.nvars, Fraction(0))

    def monomials(self) -> list[tuple[int, ...]]:
        """Exponent vectors sorted from largest to smallest in the ring order."""
        return sorted(self.terms, key=self.ring.key, reverse=True)

    def leading_monomial(self) -> tuple[int, ...]:
        if not self.terms:
            raise ValueError("zero polynomial has no leading monomial")
        return max(self.terms, key=self.ring.key)

    def leading_coeff(self) -> Fraction:
        return self.terms[self.leading_monomial()]

    def total_degree(self) -> int:
        if not self.terms:
            return -1
        return max(sum(m) for m in self.terms)

    def variables(self) -> list[str]:
        used = set()
        for m in self.terms:
            used.update(i for i, e in enumerate(m) if e)
        return [self.ring.names[i] for i in sorted(used)]

    def monic(self) -> "MPoly":
        if not self.terms:
            return self
        return self * (1 / self.leading_coeff())

    def evaluate(self, values: Mapping[str, object]):
        """Substitute values for some or all variables.

        Returns a Fraction when nothing symbolic survives, otherwise an MPoly
        in the same ring.
        """
        idx = {self.ring.index(k): v for k, v in values.items()}
        total = Fraction(0)
        for m, c in self.terms.items():
            term = c
            for i, v in idx.items():
                if m[i]:
                    term = term * v ** m[i]
            rest = tuple(0 if i in idx else e for i, e in enumerate(m))
            if any(rest):
                term = term * MPoly._raw(self.ring, {rest: Fraction(1)})
            total = total + term
        if isinstance(total, MPoly):
            return total.constant_coeff() if total.is_constant() else total
        return rat(total)

    def __repr__(self):
        return f"MPoly({self})"

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for m in self.monomials():
            c = self.terms[m]
            mono = "*".join(
                name if e == 1 else f"{name}^{e}"
                for name, e in zip(self.ring.names, m)
                if e
            )
            sign = "-" if c < 0 else "+"
            a = abs(c)
            if not mono:
                body = str(a)
            elif a == 1:
                body = mono
            else:
                body = f"{a}*{mono}"
            parts.append((sign, body))
        first_sign, first = parts[0]
        text = ("-" if first_sign == "-" else "") + first
        for sign, body in parts[1:]:
            text += f" {sign} {body}"
        return text


class Ideal:
    """An ideal given by generators in a common ring."""

    __slots__ = ("ring", "generators")

    def __init__(self, ring: Ring, generators: Iterable[MPoly] = ()):
        gens = []
        for g in generators:
            if not isinstance(g, MPoly):
                g = ring.const(g)
            if g.ring != ring:
                raise RingMismatchError("generator from a different ring")
            gens.append(g)
        self.ring = ring
        self.generators = tuple(gens)

    def __add__(self, other):
        if isinstance(other, Ideal):
            extra = other.generators
            if other.ring != self.ring:
                raise RingMismatchError("ideals from different rings")
        else:
            extra = tuple(other)
        return Ideal(self.ring, self.generators + tuple(extra))

    def __len__(self):
        return len(self.generators)

    def __repr__(self):
        return f"Ideal({len(self.generators)} generators in {self.ring!r})"


def poly_arith(p: MPoly, q: MPoly, op: str) -> MPoly:
    """Named-operation front end: ``op`` is one of add, sub, mul."""
    if p.ring != q.ring:
        raise RingMismatchError(f"{p.ring!r} vs {q.ring!r}")
    if op == "add":
        return p + q
    if op == "sub":
        return p - q
    if op == "mul":
        return p * q
    raise ValueError(f"unknown operation {op!r}")
