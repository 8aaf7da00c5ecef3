"""Randomized algebraic identities, 200 derandomized cases each."""

from fractions import Fraction

import numpy as np
from hypothesis import given, settings, strategies as st

from frobkit.corpus import make_rng, random_idempotent, random_invertible
from frobkit.dsl import evaluate
from frobkit.frobenius import (
    Endo,
    FrobAlgebra,
    check_predicate,
    convolve,
    dual,
    fourier,
    fourier_inv,
    matrix_algebra,
    matrix_structure_constants,
)
from frobkit.linalg import frac_array, zeros
from frobkit.subalgebra import split_idempotent

N = 200
entries = st.fractions(min_value=-2, max_value=2, max_denominator=3)
seeds = st.integers(0, 2 ** 32 - 1)


def transported(c, unit, counit, P, P_inv):
    """The same algebra written in the basis f_i = sum_a P[a, i] e_a."""
    c2 = np.einsum("ai,bj,abp,kp->ijk", P, P, c, P_inv)
    return c2, P_inv.dot(unit), counit.dot(P)


def random_symmetric_algebra(seed) -> FrobAlgebra:
    """M_2 or Q^3 in a random basis, with a symmetric form (scaled trace or weights)."""
    rng = make_rng(seed)
    if rng.random() < 0.5:
        c, unit, counit = matrix_structure_constants(2)
        counit = counit * Fraction(int(rng.integers(1, 4)), int(rng.integers(1, 3)))
    else:
        c = zeros((3, 3, 3))
        for i in range(3):
            c[i, i, i] = Fraction(1)
        unit = frac_array([1, 1, 1])
        counit = frac_array([int(rng.choice([-3, -1, 1, 2, 5])) for _ in range(3)])
    d = len(unit)
    P, P_inv = random_invertible(rng, d)
    return FrobAlgebra(*transported(c, unit, counit, P, P_inv))


def endos(d):
    return st.lists(entries, min_size=d * d, max_size=d * d).map(lambda xs: frac_array(xs, (d, d)))


algebras = seeds.map(random_symmetric_algebra)


@st.composite
def algebra_and_endos(draw, k):
    alg = draw(st.one_of(st.just(matrix_algebra(2)), algebras))
    return alg, [Endo(alg, draw(endos(alg.dim))) for _ in range(k)]


@settings(max_examples=N)
@given(algebra_and_endos(1))
def test_dual_involution(data):
    _, (T,) = data
    assert dual(dual(T)) == T


@settings(max_examples=N)
@given(algebra_and_endos(1))
def test_fourier_left_inverse(data):
    alg, (T,) = data
    assert fourier_inv(fourier(T), alg) == T


@settings(max_examples=N)
@given(algebra_and_endos(3))
def test_convolution_associative(data):
    _, (R, S, T) = data
    assert convolve(convolve(R, S), T) == convolve(R, convolve(S, T))


@settings(max_examples=N)
@given(algebra_and_endos(1))
def test_dual_via_diagram(data):
    alg, (T,) = data
    diagram = evaluate("(id ox ev) . (id ox #T ox id) . (coev ox id)", alg, {"T": T})
    assert (diagram.array == dual(T).matrix).all()


@settings(max_examples=N)
@given(algebra_and_endos(1), st.booleans())
def test_selfdual_trace_test(data, symmetrize):
    # T = T* iff eps(T(a) b) = eps(a T(b)) on all basis pairs
    alg, (T,) = data
    if symmetrize:
        T = (T + dual(T)).scale(Fraction(1, 2))
    d = alg.dim
    basis = np.eye(d, dtype=int).astype(object) + Fraction(0)
    pairing = all(
        alg.form(T.matrix.dot(basis[i]), basis[j]) == alg.form(basis[i], T.matrix.dot(basis[j]))
        for i in range(d) for j in range(d)
    )
    assert check_predicate(T, "selfdual").holds == pairing
    if symmetrize:
        assert pairing


@settings(max_examples=N)
@given(seeds, st.sampled_from([1, 2]))
def test_rank_of_split_is_trace(seed, n):
    rng = make_rng(seed)
    b = random_idempotent(rng, matrix_algebra(n))
    split = split_idempotent(b)
    assert split.rank == sum(b.matrix[i, i] for i in range(b.dim))
