from fractions import Fraction

import pytest
import sympy
from hypothesis import HealthCheck, settings

from frobkit.frobenius import matrix_algebra

settings.register_profile(
    "frobkit",
    max_examples=200,
    derandomize=True,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow, HealthCheck.data_too_large],
)
settings.load_profile("frobkit")


def to_sympy(p, symbols):
    return sum(
        (sympy.Rational(c.numerator, c.denominator)
         * sympy.Mul(*[s ** k for s, k in zip(symbols, m)])
         for m, c in p.terms.items()),
        sympy.Integer(0),
    )


def sympy_reduced_basis(polys, ring):
    """Reduced Groebner basis from sympy, normalized to be monic in our order."""
    symbols = sympy.symbols(ring.names)
    order = "grevlex" if ring.order == "degrevlex" else "lex"
    exprs = [to_sympy(p, symbols) for p in polys]
    G = sympy.groebner(exprs, *symbols, order=order)
    out = set()
    for g in G.exprs:
        lc = sympy.Poly(g, *symbols).LC(order=order)
        out.add(sympy.expand(g / lc))
    return out, symbols


@pytest.fixture(scope="session")
def m2():
    return matrix_algebra(2)


@pytest.fixture(scope="session")
def m3():
    return matrix_algebra(3)


def F(x):
    return Fraction(x)
