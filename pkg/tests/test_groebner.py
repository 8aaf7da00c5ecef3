import random
from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from conftest import sympy_reduced_basis, to_sympy
from frobkit.groebner import (
    INFINITE,
    Budget,
    ResourceLimitExceeded,
    groebner,
    ideal_dimension,
    normal_form,
    standard_monomials,
    vector_space_dimension,
)
from frobkit.poly import Ideal, MPoly, Ring

R = Ring(["x", "y", "z"])
x, y, z = R.gens()

coeffs = st.integers(-3, 3).map(Fraction)
monos = st.tuples(*[st.integers(0, 2)] * 3).filter(lambda m: sum(m) <= 2)
small_polys = st.dictionaries(monos, coeffs, min_size=1, max_size=3).map(lambda d: MPoly(R, d))
ideals = st.lists(small_polys, min_size=1, max_size=3)


def test_twisted_cubic():
    # lex-free check on a classic: the twisted cubic has dimension 1
    I = Ideal(R, [y - x ** 2, z - x ** 3])
    gb = groebner(I)
    assert ideal_dimension(gb) == 1
    assert vector_space_dimension(gb) == INFINITE
    assert normal_form(z * x - y ** 2, gb).is_zero()


def test_zero_dimensional_count():
    I = Ideal(R, [x ** 2 - 1, y ** 2 - 1, z - x * y])
    gb = groebner(I)
    assert ideal_dimension(gb) == 0
    assert vector_space_dimension(gb) == 4
    assert len(standard_monomials(gb)) == 4


def test_unit_and_zero_ideals():
    gb = groebner(Ideal(R, [x, x - 1]))
    assert gb.is_unit and list(gb.basis) == [R.one]
    assert ideal_dimension(gb) == -1
    assert vector_space_dimension(gb) == 0
    empty = groebner(Ideal(R, []))
    assert ideal_dimension(empty) == 3


def test_budget_exceeded_is_distinct():
    gens = [x ** 2 + y * z - 1, y ** 2 + x * z - 1, z ** 2 + x * y - 1]
    with pytest.raises(ResourceLimitExceeded) as info:
        groebner(Ideal(R, gens), Budget(max_pairs=1))
    assert info.value.reason == "S-pair budget exceeded"
    with pytest.raises(ResourceLimitExceeded):
        groebner(Ideal(R, gens), Budget(seconds=1e-9))
    gb = groebner(Ideal(R, gens))
    assert gb.stats["pairs"] > 1


@settings(max_examples=200)
@given(ideals)
def test_matches_sympy_reduced_basis(gens):
    gb = groebner(Ideal(R, gens))
    expected, symbols = sympy_reduced_basis(gens, R)
    assert {sympy.expand(to_sympy(g, symbols)) for g in gb.basis} == expected


@given(ideals, st.randoms(use_true_random=False))
def test_generator_permutation_invariance(gens, rnd):
    shuffled = list(gens)
    rnd.shuffle(shuffled)
    assert groebner(Ideal(R, gens)).basis == groebner(Ideal(R, shuffled)).basis


@given(ideals, small_polys)
def test_normal_form_idempotent(gens, p):
    gb = groebner(Ideal(R, gens))
    nf = normal_form(p, gb)
    assert normal_form(nf, gb) == nf


@given(ideals, small_polys, small_polys)
def test_normal_form_multiplicative(gens, p, q):
    gb = groebner(Ideal(R, gens))
    lhs = normal_form(p * q, gb)
    rhs = normal_form(normal_form(p, gb) * normal_form(q, gb), gb)
    assert lhs == rhs


@given(ideals, small_polys)
def test_generators_and_multiples_reduce_to_zero(gens, p):
    gb = groebner(Ideal(R, gens))
    for g in gens:
        assert normal_form(p * g, gb).is_zero()


def test_dimension_against_brute_force():
    # dimension of a monomial ideal: largest coordinate subspace avoiding all generators
    rng = random.Random(5)
    for _ in range(30):
        gens = []
        for _ in range(rng.randint(1, 3)):
            m = tuple(rng.randint(0, 1) for _ in range(3))
            if any(m):
                gens.append(MPoly(R, {m: Fraction(1)}))
        if not gens:
            continue
        gb = groebner(Ideal(R, gens))
        best = 0
        for mask in range(8):
            if all(any(g.leading_monomial()[i] and not (mask >> i) & 1 for i in range(3)) for g in gens):
                best = max(best, bin(mask).count("1"))
        assert ideal_dimension(gb) == best
