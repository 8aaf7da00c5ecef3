"""Seeded random inputs: rational matrices, endomorphisms and idempotents."""

from __future__ import annotations

from fractions import Fraction

import numpy as np

from .frobenius import Endo, FrobAlgebra
from .linalg import SingularMatrixError, dot, inverse, zeros


def random_rational(rng: np.random.Generator, bound: int = 3, denominators=(1, 1, 2, 3)) -> Fraction:
    num = int(rng.integers(-bound, bound + 1))
    den = int(denominators[int(rng.integers(len(denominators)))])
    return Fraction(num, den)


def random_matrix(rng, rows: int, cols: int, density: float = 0.6, **kw) -> np.ndarray:
    out = zeros((rows, cols))
    for i in range(rows):
        for j in range(cols):
            if rng.random() < density:
                out[i, j] = random_rational(rng, **kw)
    return out


def random_invertible(rng, d: int, attempts: int = 100) -> np.ndarray:
    for _ in range(attempts):
        P = random_matrix(rng, d, d, density=0.8)
        try:
            return P, inverse(P)
        except SingularMatrixError:
            continue
    raise RuntimeError("no invertible matrix found")


def random_endo(rng, algebra: FrobAlgebra, density: float = 0.5) -> Endo:
    d = algebra.dim
    return Endo(algebra, random_matrix(rng, d, d, density))


def random_idempotent(rng, algebra: FrobAlgebra, rank: int | None = None) -> Endo:
    """P D P^-1 with D a 0/1 diagonal of the given rank."""
    d = algebra.dim
    if rank is None:
        rank = int(rng.integers(0, d + 1))
    P, P_inv = random_invertible(rng, d)
    D = zeros((d, d))
    for i in rng.permutation(d)[:rank]:
        D[i, i] = Fraction(1)
    return Endo(algebra, dot(dot(P, D), P_inv))


def make_rng(seed: int | None) -> np.random.Generator:
    return np.random.default_rng(seed)
