"""Frobenius subalgebras versus unital selfdual idempotents with exchange relations.

Converse direction: split an idempotent b = u v with v u = id, give the image
Y the structure

    m_Y = v m (u x u),  e_Y = v e,  delta_Y = (v x v) delta u,  eps_Y = eps u,

and check that u embeds Y as a Frobenius subalgebra. Forward direction: from a
unital subalgebra with nondegenerate restricted form, build b = i i*.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .frobenius import (
    DegenerateFormError,
    Endo,
    FrobAlgebra,
    FrobeniusError,
    check_predicate,
    frobenius_failure,
)
from .linalg import (
    SingularMatrixError,
    dot,
    first_difference,
    frac_array,
    identity,
    inverse,
    kron,
    rank,
    rref,
    solve_in_span,
)


class NotIdempotentError(ValueError):
    def __init__(self, witness):
        self.witness = witness
        super().__init__(f"b o b != b at matrix entry {witness} (1-based)")


class NotClosedError(ValueError):
    def __init__(self, witness, message):
        self.witness = witness
        super().__init__(message)


@dataclass(frozen=True, eq=False)
class SplitData:
    b: Endo
    u: np.ndarray  # d x r, columns are the image basis
    v: np.ndarray  # r x d, coordinates of b(x) in that basis

    @property
    def rank(self) -> int:
        return self.u.shape[1]


@dataclass(eq=False)
class InducedAlgebra:
    """The image Y with its induced tensors; ``algebra`` is set once validated."""

    split: SplitData
    mul: np.ndarray      # r x r^2
    unit: np.ndarray     # r
    comul: np.ndarray    # r^2 x r
    counit: np.ndarray   # r
    algebra: FrobAlgebra | None = None
    failure: FrobeniusError | None = None

    @property
    def dim(self) -> int:
        return len(self.unit)

    @property
    def structure_constants(self) -> np.ndarray:
        """c[i, j, k] with f_i f_j = sum_k c[i, j, k] f_k."""
        r = self.dim
        return self.mul.reshape(r, r, r).transpose(1, 2, 0)

    @property
    def comul_tensor(self) -> np.ndarray:
        r = self.dim
        return self.comul.reshape(r, r, r)


@dataclass
class EmbeddingReport:
    checks: dict = field(default_factory=dict)      # name -> bool
    witnesses: dict = field(default_factory=dict)   # name -> 1-based index

    @property
    def ok(self) -> bool:
        return all(self.checks.values())

    def __bool__(self):
        return self.ok


def split_idempotent(b: Endo) -> SplitData:
    """Exact rank factorization of an idempotent.

    u is the column echelon basis of the image (leftmost pivots first) and
    v = rows of b at the pivot positions, so u v = b and v u = id.
    """
    M = b.matrix
    if (w := first_difference(dot(M, M), M)) is not None:
        raise NotIdempotentError(tuple(int(i) + 1 for i in w))
    red, pivots = rref(M.T)
    u = red[: len(pivots)].T.copy()
    v = M[pivots, :].copy()
    return SplitData(b, u, v)


def induce_structure(split: SplitData, validate: bool = True) -> InducedAlgebra:
    """Transport the Frobenius structure of X to the image of b.

    With ``validate`` the result must pass every Frobenius axiom; otherwise
    FrobeniusError names the first failure. ``validate=False`` returns the raw
    tensors (with ``failure`` recorded) for exploring why hypotheses matter.
    """
    alg = split.b.algebra
    u, v = split.u, split.v
    mul = dot(dot(v, alg.mul_matrix), kron(u, u))
    unit = v.dot(alg.unit)
    comul = dot(dot(kron(v, v), alg.comul_matrix), u)
    counit = alg.counit.dot(u)
    induced = InducedAlgebra(split, mul, unit, comul, counit)
    r = split.rank
    failure = frobenius_failure(induced.structure_constants, unit, counit, comul.reshape(r, r, r))
    if failure is None:
        try:
            induced.algebra = FrobAlgebra(induced.structure_constants, unit, counit,
                                          comul.reshape(r, r, r))
        except FrobeniusError as exc:
            failure = exc
        else:
            derived = FrobAlgebra(induced.structure_constants, unit, counit, validate=False)
            if (w := first_difference(derived.comul, induced.comul_tensor)) is not None:
                failure = FrobeniusError("comultiplication determined by (m_Y, eps_Y)",
                                         tuple(int(i) + 1 for i in w))
    induced.failure = failure
    if failure is not None:
        induced.algebra = None
        if validate:
            raise failure
    return induced


def _right_dual(f: np.ndarray, ev_target: np.ndarray, coev_source: np.ndarray,
                dim_target: int, dim_source: int) -> np.ndarray:
    """f*: T -> S for f: S -> T, as (ev_T x id_S)(id_T x f x id_S)(id_T x coev_S)."""
    step = kron(identity(dim_target), coev_source)
    step = dot(kron(kron(identity(dim_target), f), identity(dim_source)), step)
    return dot(kron(ev_target, identity(dim_source)), step)


def verify_embedding(split: SplitData, induced: InducedAlgebra) -> EmbeddingReport:
    """Check that u: Y -> X is a unital algebra morphism with u* = v and v* = u.

    Duals use coev_Y = delta_Y e_Y and ev_X = eps m (and symmetrically for v*).
    """
    alg = split.b.algebra
    u, v = split.u, split.v
    d, r = u.shape
    report = EmbeddingReport()

    def record(name, lhs, rhs):
        w = first_difference(lhs, rhs)
        report.checks[name] = w is None
        if w is not None:
            report.witnesses[name] = tuple(int(i) + 1 for i in w)

    record("algebra morphism", dot(u, induced.mul), dot(alg.mul_matrix, kron(u, u)))
    record("unital morphism", u.dot(induced.unit), alg.unit)
    ev_x = alg.counit.reshape(1, d).dot(alg.mul_matrix)
    ev_y = induced.counit.reshape(1, r).dot(induced.mul)
    coev_x = alg.comul_matrix.dot(alg.unit).reshape(d * d, 1)
    coev_y = induced.comul.dot(induced.unit).reshape(r * r, 1)
    record("u* = v", _right_dual(u, ev_x, coev_y, d, r), v)
    record("v* = u", _right_dual(v, ev_y, coev_x, r, d), u)
    return report


def subalgebra_to_idempotent(u, ambient: FrobAlgebra) -> Endo:
    """b = i o i* for the subalgebra spanned by the columns of ``u``.

    i* has coordinates G_Y^-T u^T G^T a, where G_Y = u^T G u is the restricted
    Gram matrix. Raises DegenerateFormError when G_Y is singular and
    NotClosedError when the span is not a unital subalgebra.
    """
    u = frac_array(u)
    if u.ndim == 1:
        u = u.reshape(-1, 1)
    d = ambient.dim
    if u.shape[0] != d:
        raise ValueError(f"span vectors must have length {d}")
    red, pivots = rref(u.T)
    u = red[: len(pivots)].T.copy() if len(pivots) < u.shape[1] else u
    r = u.shape[1]
    if solve_in_span(u, ambient.unit) is None:
        raise NotClosedError(None, "span does not contain the unit")
    for a in range(r):
        for b in range(r):
            prod = ambient.multiply(u[:, a], u[:, b])
            if solve_in_span(u, prod) is None:
                raise NotClosedError(
                    (a + 1, b + 1),
                    f"product of span vectors {a + 1} and {b + 1} lies outside the span",
                )
    b = orthogonal_projection(u, ambient)
    failed = [p for p in ("selfdual", "unital", "idempotent", "er")
              if not check_predicate(b, p).holds]
    if failed:
        raise FrobeniusError(", ".join(failed), message=f"b = i i* fails {', '.join(failed)}")
    return b


def orthogonal_projection(span, ambient: FrobAlgebra) -> Endo:
    """u i* for the columns u of ``span``, with i* = G_Y^-T u^T G^T.

    Needs only a nondegenerate restricted form; the span need not be closed
    under multiplication, which yields selfdual unital idempotents without ER.
    """
    u = frac_array(span)
    gram_y = u.T.dot(ambient.gram).dot(u)
    try:
        gram_y_inv = inverse(gram_y)
    except SingularMatrixError:
        raise DegenerateFormError(
            message=f"the span has a restricted form of rank {rank(gram_y)} < {u.shape[1]}, "
                    "which is degenerate with respect to the bilinear form kappa(X, Y) = eps(XY)"
        ) from None
    i_star = gram_y_inv.T.dot(u.T).dot(ambient.gram.T)
    return Endo(ambient, u.dot(i_star))


def span_structure(u, ambient: FrobAlgebra) -> np.ndarray:
    """Structure constants of the subalgebra spanned by the columns of ``u``."""
    u = frac_array(u)
    r = u.shape[1]
    c = np.empty((r, r, r), dtype=object)
    for a in range(r):
        for b in range(r):
            coords = solve_in_span(u, ambient.multiply(u[:, a], u[:, b]))
            if coords is None:
                raise NotClosedError((a + 1, b + 1), "span is not closed under multiplication")
            c[a, b] = coords
    return c


def change_basis(c: np.ndarray, P: np.ndarray) -> np.ndarray:
    """Structure constants in the basis f'_i = sum_a P[a, i] f_a."""
    P = frac_array(P)
    P_inv = inverse(P)
    return np.einsum("ai,bj,abp,kp->ijk", P, P, c, P_inv)
