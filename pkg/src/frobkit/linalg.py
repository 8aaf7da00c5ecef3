"""Exact dense linear algebra on numpy object arrays of Fractions."""

from __future__ import annotations

from fractions import Fraction

import numpy as np


class SingularMatrixError(ArithmeticError):
    pass


def frac_array(data, shape=None) -> np.ndarray:
    """Object array with every entry coerced to Fraction (MPoly entries pass through)."""
    arr = np.array(data, dtype=object)
    if shape is not None:
        arr = arr.reshape(shape)
    flat = arr.reshape(-1)
    for i, v in enumerate(flat):
        if isinstance(v, (int, str)) and not isinstance(v, bool):
            flat[i] = Fraction(v)
    return arr


def zeros(shape) -> np.ndarray:
    arr = np.empty(shape, dtype=object)
    arr.fill(Fraction(0))
    return arr


def identity(d: int) -> np.ndarray:
    out = zeros((d, d))
    for i in range(d):
        out[i, i] = Fraction(1)
    return out


def is_zero(arr: np.ndarray) -> bool:
    return all(v == 0 for v in arr.reshape(-1))


def first_nonzero(arr: np.ndarray):
    """Index tuple of the first nonzero entry in C order, or None."""
    for idx, v in np.ndenumerate(arr):
        if v != 0:
            return idx
    return None


def first_difference(a: np.ndarray, b: np.ndarray):
    if a.shape != b.shape:
        raise ValueError(f"shape mismatch {a.shape} vs {b.shape}")
    for idx, v in np.ndenumerate(a):
        if v != b[idx]:
            return idx
    return None


def rref(m: np.ndarray) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form, pivoting on the leftmost available column."""
    a = frac_array(m).copy()
    rows, cols = a.shape
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        p = next((i for i in range(r, rows) if a[i, c] != 0), None)
        if p is None:
            continue
        if p != r:
            a[[r, p]] = a[[p, r]]
        a[r] = a[r] / a[r, c]
        for i in range(rows):
            if i != r and a[i, c] != 0:
                a[i] = a[i] - a[i, c] * a[r]
        pivots.append(c)
        r += 1
    return a, pivots


def rank(m: np.ndarray) -> int:
    return len(rref(m)[1])


def inverse(m: np.ndarray) -> np.ndarray:
    m = frac_array(m)
    d = m.shape[0]
    if m.shape != (d, d):
        raise ValueError("inverse of a non-square matrix")
    red, pivots = rref(np.hstack([m, identity(d)]))
    if pivots[:d] != list(range(d)):
        raise SingularMatrixError("matrix is singular")
    return red[:, d:]


def solve_in_span(basis_cols: np.ndarray, vec: np.ndarray):
    """Coordinates c with basis_cols @ c == vec, or None when vec is outside the span."""
    d, r = basis_cols.shape
    red, pivots = rref(np.hstack([basis_cols, vec.reshape(d, 1)]))
    if r in pivots:
        return None
    coords = zeros(r)
    for row, c in enumerate(pivots):
        coords[c] = red[row, r]
    if not (basis_cols.dot(coords) == vec).all():
        return None
    return coords


def _nonzero_rows(b: np.ndarray) -> list[list[tuple[int, object]]]:
    return [[(j, v) for j, v in enumerate(row) if v] for row in b]


def dot(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Matrix product that skips zero entries (structure tensors are sparse)."""
    if a.shape[1] != b.shape[0]:
        raise ValueError(f"cannot multiply {a.shape} by {b.shape}")
    rows_b = _nonzero_rows(b)
    out = zeros((a.shape[0], b.shape[1]))
    for i, row in enumerate(a):
        acc: dict = {}
        for k, v in enumerate(row):
            if v:
                for j, w in rows_b[k]:
                    acc[j] = acc[j] + v * w if j in acc else v * w
        for j, s in acc.items():
            out[i, j] = s
    return out


def kron(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Kronecker product that skips zero entries."""
    ra, ca = a.shape
    rb, cb = b.shape
    out = zeros((ra * rb, ca * cb))
    nz_b = [(i, j, v) for (i, j), v in np.ndenumerate(b) if v]
    for (i, j), v in np.ndenumerate(a):
        if v:
            for k, l, w in nz_b:
                out[i * rb + k, j * cb + l] = v * w
    return out
