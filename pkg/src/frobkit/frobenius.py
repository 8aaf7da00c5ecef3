"""Frobenius algebras in Vec and the endomorphism calculus on them.

Conventions
-----------
An algebra of dimension d has basis e_0..e_{d-1}. Structure constants are
stored as ``c[i, j, k]`` = coefficient of e_k in e_i e_j, the comultiplication
as ``comul[s, t, x]`` = coefficient of e_s (x) e_t in delta(e_x).

An endomorphism T is a d x d matrix whose column x holds T(e_x). For M_n the
basis is E_{i,j} -> index i*n + j (0-based), and ``T.A[i, j, k, l]`` is the
coefficient of E_{k,l} in T(E_{i,j}). Messages and witnesses are 1-based.

The derived comultiplication is delta(a) = sum_i (a e_i') (x) e_i with
(e_i') the dual basis, kappa(e_i, e_j') = [i == j]. This is counital for every
nondegenerate form and coincides with sum_i (a e_i) (x) e_i' whenever the form
is symmetric (matrix algebras with the trace, commutative algebras).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any

import numpy as np

from .linalg import (
    SingularMatrixError,
    first_difference,
    first_nonzero,
    frac_array,
    identity,
    inverse,
    is_zero,
    zeros,
)
from .poly import MPoly


class FrobeniusError(ValueError):
    """An axiom fails; ``axiom`` names it and ``witness`` is 1-based."""

    def __init__(self, axiom: str, witness: tuple | None = None, message: str = ""):
        self.axiom = axiom
        self.witness = witness
        text = message or f"{axiom} fails"
        if witness is not None:
            text += f" at {witness}"
        super().__init__(text)


class DegenerateFormError(FrobeniusError):
    def __init__(self, witness=None, message=""):
        super().__init__(
            "nondegeneracy",
            witness,
            message or "the restricted form is singular, which is degenerate with respect to the "
                       "bilinear form kappa(a, b) = eps(ab)",
        )


class ScalarMatrixError(ValueError):
    pass


class AlgebraMismatchError(ValueError):
    pass


def _one_based(idx) -> tuple:
    return tuple(int(i) + 1 for i in idx)


def _algebra_failure(c, unit) -> FrobeniusError | None:
    eye = identity(len(unit))
    left = np.einsum("ijp,pkq->ijkq", c, c)
    right = np.einsum("jkp,ipq->ijkq", c, c)
    if (w := first_difference(left, right)) is not None:
        return FrobeniusError("associativity", _one_based(w[:3]))
    if (w := first_difference(np.einsum("i,ijk->jk", unit, c), eye)) is not None:
        return FrobeniusError("left unitality", _one_based(w))
    if (w := first_difference(np.einsum("j,ijk->ik", unit, c), eye)) is not None:
        return FrobeniusError("right unitality", _one_based(w))
    return None


def frobenius_failure(c, unit, counit, comul) -> FrobeniusError | None:
    """First failing Frobenius axiom for the given tensors, or None."""
    if (failure := _algebra_failure(c, unit)) is not None:
        return failure
    eye = identity(len(unit))
    left = np.einsum("srx,pqs->pqrx", comul, comul)
    right = np.einsum("ptx,qrt->pqrx", comul, comul)
    if (w := first_difference(left, right)) is not None:
        return FrobeniusError("coassociativity", _one_based(w))
    if (w := first_difference(np.einsum("s,stx->tx", counit, comul), eye)) is not None:
        return FrobeniusError("left counitality", _one_based(w))
    if (w := first_difference(np.einsum("t,stx->sx", counit, comul), eye)) is not None:
        return FrobeniusError("right counitality", _one_based(w))
    dm = np.einsum("ijp,stp->stij", c, comul)
    m_left = np.einsum("atj,ias->stij", comul, c)
    m_right = np.einsum("sbi,bjt->stij", comul, c)
    if (w := first_difference(dm, m_left)) is not None:
        return FrobeniusError("Frobenius condition (m x id)(id x delta)", _one_based(w))
    if (w := first_difference(dm, m_right)) is not None:
        return FrobeniusError("Frobenius condition (id x m)(delta x id)", _one_based(w))
    return None


class FrobAlgebra:
    """A Frobenius algebra given by structure constants, unit and counit."""

    is_matrix_model = False

    def __init__(self, structure, unit, counit, comul=None, *, validate: bool = True,
                 labels: list[str] | None = None):
        c = frac_array(structure)
        d = c.shape[0]
        if c.shape != (d, d, d):
            raise ValueError(f"structure constants must have shape (d, d, d), got {c.shape}")
        self.dim = d
        self.c = c
        self.unit = frac_array(unit, (d,))
        self.counit = frac_array(counit, (d,))
        self.labels = labels or [f"e{i + 1}" for i in range(d)]
        self.gram = np.einsum("ijk,k->ij", c, self.counit)
        if validate:
            self._check_algebra()
        try:
            self.gram_inv = self._gram_inverse()
        except SingularMatrixError:
            raise DegenerateFormError() from None
        self.comul = self._derived_comul() if comul is None else frac_array(comul, (d, d, d))
        if validate:
            failure = frobenius_failure(self.c, self.unit, self.counit, self.comul)
            if failure is not None:
                raise failure

    def _gram_inverse(self):
        return inverse(self.gram)

    def _check_algebra(self):
        if (failure := _algebra_failure(self.c, self.unit)) is not None:
            raise failure

    def _derived_comul(self):
        # delta(e_x) = sum_l (e_x e_l) (x) e_l', where e_t' = sum_l D[l, t] e_l
        return np.einsum("xls,lt->stx", self.c, self.gram_inv)

    # matrix forms used by the diagram evaluator --------------------------

    @property
    def mul_matrix(self) -> np.ndarray:
        d = self.dim
        return self.c.transpose(2, 0, 1).reshape(d, d * d)

    @property
    def comul_matrix(self) -> np.ndarray:
        d = self.dim
        return self.comul.reshape(d * d, d)

    @property
    def dual_basis(self) -> np.ndarray:
        """Column t holds the coordinates of e_t'."""
        return self.gram_inv

    def multiply(self, a, b) -> np.ndarray:
        return np.einsum("i,j,ijk->k", frac_array(a), frac_array(b), self.c)

    def form(self, a, b):
        return frac_array(a).dot(self.gram).dot(frac_array(b))

    def same_as(self, other: "FrobAlgebra") -> bool:
        return self is other or (
            self.dim == other.dim
            and (self.c == other.c).all()
            and (self.unit == other.unit).all()
            and (self.counit == other.counit).all()
            and (self.comul == other.comul).all()
        )

    def __repr__(self):
        return f"FrobAlgebra(dim={self.dim})"


def matrix_structure_constants(n: int):
    """(c, unit, counit) of M_n with the trace form in the E_{i,j} basis."""
    d = n * n
    c = zeros((d, d, d))
    for i in range(n):
        for j in range(n):
            for l in range(n):
                c[i * n + j, j * n + l, i * n + l] = Fraction(1)
    unit = zeros(d)
    for i in range(n):
        unit[i * n + i] = Fraction(1)
    return c, unit, unit.copy()


class MatrixFrobenius(FrobAlgebra):
    """M_n over Q with kappa(X, Y) = Tr(XY); E_{i,j} pairs with E_{j,i}."""

    is_matrix_model = True

    def __init__(self, n: int, *, validate: bool = False):
        if n < 1:
            raise ValueError("n must be positive")
        self.n = n
        c, unit, counit = matrix_structure_constants(n)
        super().__init__(c, unit, counit, validate=validate,
                         labels=[f"E{i + 1}{j + 1}" for i in range(n) for j in range(n)])

    def _gram_inverse(self):
        # the Gram matrix is the transpose permutation E_{i,j} <-> E_{j,i}
        return self.gram.copy()

    def index(self, i: int, j: int) -> int:
        return i * self.n + j

    def vec(self, X) -> np.ndarray:
        X = frac_array(X)
        if X.shape != (self.n, self.n):
            raise ValueError(f"expected a {self.n}x{self.n} matrix, got shape {X.shape}")
        return X.reshape(-1)

    def unvec(self, v) -> np.ndarray:
        return np.asarray(v, dtype=object).reshape(self.n, self.n)

    def elementary(self, i: int, j: int) -> np.ndarray:
        E = zeros((self.n, self.n))
        E[i, j] = Fraction(1)
        return E

    def __repr__(self):
        return f"MatrixFrobenius(n={self.n})"


_matrix_cache: dict[int, MatrixFrobenius] = {}


def matrix_algebra(n: int) -> MatrixFrobenius:
    if n not in _matrix_cache:
        _matrix_cache[n] = MatrixFrobenius(n)
    return _matrix_cache[n]


def make_general_frobenius(structure, unit, counit) -> FrobAlgebra:
    """Validated Frobenius algebra; raises FrobeniusError naming the failed axiom."""
    return FrobAlgebra(structure, unit, counit, validate=True)


# -- endomorphisms ---------------------------------------------------------


@dataclass(frozen=True, eq=False)
class Endo:
    algebra: FrobAlgebra
    matrix: np.ndarray

    def __post_init__(self):
        d = self.algebra.dim
        if self.matrix.shape != (d, d):
            raise ValueError(f"endomorphism matrix must be {d}x{d}, got {self.matrix.shape}")

    @classmethod
    def from_coefficients(cls, algebra: MatrixFrobenius, A) -> "Endo":
        """From the rank-4 array A[i, j, k, l] = coefficient of E_{k,l} in T(E_{i,j})."""
        n = algebra.n
        A = frac_array(A)
        if A.shape != (n, n, n, n):
            raise ValueError(f"coefficient array must have shape {(n,) * 4}, got {A.shape}")
        return cls(algebra, A.transpose(2, 3, 0, 1).reshape(n * n, n * n).copy())

    @classmethod
    def from_images(cls, algebra: MatrixFrobenius, images) -> "Endo":
        """From images[i][j] = T(E_{i,j}) given as n x n matrices."""
        n = algebra.n
        A = zeros((n, n, n, n))
        for i in range(n):
            for j in range(n):
                A[i, j] = frac_array(images[i][j], (n, n))
        return cls.from_coefficients(algebra, A)

    @classmethod
    def identity(cls, algebra: FrobAlgebra) -> "Endo":
        return cls(algebra, identity(algebra.dim))

    @classmethod
    def zero(cls, algebra: FrobAlgebra) -> "Endo":
        return cls(algebra, zeros((algebra.dim, algebra.dim)))

    @property
    def A(self) -> np.ndarray:
        if not self.algebra.is_matrix_model:
            raise TypeError("rank-4 coefficients exist only for the matrix model")
        n = self.algebra.n
        return self.matrix.reshape(n, n, n, n).transpose(2, 3, 0, 1)

    @property
    def dim(self) -> int:
        return self.algebra.dim

    def is_symbolic(self) -> bool:
        return any(isinstance(v, MPoly) for v in self.matrix.reshape(-1))

    def __call__(self, x):
        return apply(self, x)

    def _check(self, other: "Endo"):
        if not self.algebra.same_as(other.algebra):
            raise AlgebraMismatchError("endomorphisms of different algebras")

    def __eq__(self, other):
        if not isinstance(other, Endo):
            return NotImplemented
        return self.algebra.same_as(other.algebra) and bool((self.matrix == other.matrix).all())

    __hash__ = None

    def __add__(self, other: "Endo") -> "Endo":
        self._check(other)
        return Endo(self.algebra, self.matrix + other.matrix)

    def __sub__(self, other: "Endo") -> "Endo":
        self._check(other)
        return Endo(self.algebra, self.matrix - other.matrix)

    def __neg__(self):
        return Endo(self.algebra, -self.matrix)

    def scale(self, s) -> "Endo":
        if not isinstance(s, MPoly):
            s = Fraction(s)
        return Endo(self.algebra, self.matrix * s)

    def __rmul__(self, s):
        return self.scale(s)

    def __repr__(self):
        return f"Endo({self.algebra!r})"


def apply(T: Endo, X) -> np.ndarray:
    """T(X); X is an n x n matrix in the matrix model, a coordinate vector otherwise."""
    alg = T.algebra
    if alg.is_matrix_model and np.ndim(X) == 2:
        return alg.unvec(T.matrix.dot(alg.vec(X)))
    v = frac_array(X)
    if v.shape != (alg.dim,):
        raise ValueError(f"expected a vector of length {alg.dim}, got shape {v.shape}")
    return T.matrix.dot(v)


def dual(T: Endo) -> Endo:
    """T*(a) = sum_i eps(a T(e_i')) e_i, the diagrammatic dual."""
    alg = T.algebra
    if alg.is_matrix_model:
        n = alg.n
        flipped = T.A.transpose(3, 2, 1, 0)
        return Endo(alg, flipped.transpose(2, 3, 0, 1).reshape(n * n, n * n).copy())
    return Endo(alg, alg.gram.dot(T.matrix).dot(alg.gram_inv).T.copy())


def compose(S: Endo, T: Endo) -> Endo:
    """S o T (T applied first)."""
    S._check(T)
    return Endo(S.algebra, S.matrix.dot(T.matrix))


def convolve(S: Endo, T: Endo) -> Endo:
    """S * T = m o (S x T) o delta."""
    S._check(T)
    alg = S.algebra
    if alg.is_matrix_model:
        A = np.einsum("irks,rjsl->ijkl", S.A, T.A)
        return Endo.from_coefficients(alg, A)
    step = np.einsum("as,stx->atx", S.matrix, alg.comul)
    step = np.einsum("bt,atx->abx", T.matrix, step)
    return Endo(alg, np.einsum("abq,abx->qx", alg.c, step))


def fourier(T: Endo) -> np.ndarray:
    """F(T) = (id x m)(id x T x id)(delta x id) as an array F[p, q, x, y].

    F[p, q, x, y] is the coefficient of e_p (x) e_q in F(T)(e_x (x) e_y).
    """
    alg = T.algebra
    step = np.einsum("psx,ts->ptx", alg.comul, T.matrix)
    return np.einsum("ptx,tyq->pqxy", step, alg.c)


def fourier_inv(x: np.ndarray, algebra: FrobAlgebra) -> Endo:
    """F^-1(x) = (eps x id) o x o (id x e)."""
    d = algebra.dim
    x = np.asarray(x, dtype=object)
    if x.shape != (d, d, d, d):
        raise ValueError(f"expected an array of shape {(d,) * 4}, got {x.shape}")
    step = np.einsum("pqyw,w->pqy", x, algebra.unit)
    return Endo(algebra, np.einsum("p,pqy->qy", algebra.counit, step))


def rank8(x: np.ndarray, algebra: MatrixFrobenius) -> np.ndarray:
    """Reshape a map on M_n (x) M_n to indices [p1, p2, q1, q2, x1, x2, y1, y2]."""
    return x.reshape((algebra.n,) * 8)


def _square(m) -> np.ndarray:
    arr = m.matrix if isinstance(m, Endo) else np.asarray(m, dtype=object)
    if arr.ndim == 4:
        d = arr.shape[0]
        arr = arr.reshape(d * d, d * d)
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
        raise ValueError(f"not a square coefficient array: shape {arr.shape}")
    return arr


def is_central(m) -> bool:
    """True iff the map is a scalar multiple of the identity of its space.

    Accepts an Endo or a d x d array (the space X) or a (d, d, d, d) array
    such as a Fourier transform (the space X (x) X).
    """
    return _central_witness(m) is None


def _central_witness(m):
    arr = _square(m)
    diag = arr[0, 0]
    for (i, j), v in np.ndenumerate(arr):
        if (i != j and v != 0) or (i == j and v != diag):
            return (i + 1, j + 1)
    return None


# -- predicates ------------------------------------------------------------

PREDICATES = ("selfdual", "unital", "idempotent", "conv_stable", "er", "normal", "biprojection")


@dataclass
class PredicateReport:
    predicate: str
    holds: bool
    lam: Any = None
    witness: tuple | None = None
    failed: str | None = None
    detail: str = ""
    checks: dict = field(default_factory=dict)

    def __bool__(self):
        return self.holds


def er_residuals(T: Endo) -> tuple[np.ndarray, np.ndarray]:
    """The differences (term1 - term2, term2 - term3) of the exchange relations.

    Matrix model: rank-6 arrays over (i, j, k, l, r, s) with
      term1 = sum_t A[i,j,t,k] A[t,l,r,s]   (T(T(E_ij) E_kl))
      term2 = sum_t A[i,j,r,t] A[k,l,t,s]   (T(E_ij) T(E_kl))
      term3 = sum_t A[k,l,j,t] A[i,t,r,s]   (T(E_ij T(E_kl)))
    General algebras: rank-3 arrays [q, i, j] for the basis pair (e_i, e_j).
    """
    alg = T.algebra
    if alg.is_matrix_model:
        A = T.A
        t1 = np.einsum("ijtk,tlrs->ijklrs", A, A)
        t2 = np.einsum("ijrt,klts->ijklrs", A, A)
        t3 = np.einsum("kljt,itrs->ijklrs", A, A)
        return t1 - t2, t2 - t3
    M, c = T.matrix, alg.c
    Ta_b = np.einsum("ai,ajp->pij", M, c)
    t1 = np.einsum("qp,pij->qij", M, Ta_b)
    t2 = np.einsum("ai,bj,abq->qij", M, M, c)
    a_Tb = np.einsum("bj,ibp->pij", M, c)
    t3 = np.einsum("qp,pij->qij", M, a_Tb)
    return t1 - t2, t2 - t3


def _report(name, witness, detail="") -> PredicateReport:
    return PredicateReport(name, witness is None, witness=witness, detail=detail if witness else "")


def _selfdual(T: Endo) -> PredicateReport:
    if T.algebra.is_matrix_model:
        A = T.A
        w = first_difference(A, A.transpose(3, 2, 1, 0))
        return _report("selfdual", w and _one_based(w), "A[i,j,k,l] != A[l,k,j,i]")
    w = first_difference(dual(T).matrix, T.matrix)
    return _report("selfdual", w and _one_based(w), "T* differs from T")


def _unital(T: Endo) -> PredicateReport:
    alg = T.algebra
    if alg.is_matrix_model:
        n = alg.n
        A = T.A
        sums = np.einsum("iikl->kl", A)
        w = first_difference(sums, identity(n))
        return _report("unital", w and _one_based(w), "sum_i A[i,i,k,l] != delta_kl")
    w = first_difference(T.matrix.dot(alg.unit), alg.unit)
    return _report("unital", w and _one_based(w), "T(1) != 1")


def _idempotent(T: Endo) -> PredicateReport:
    if T.algebra.is_matrix_model:
        A = T.A
        w = first_difference(np.einsum("ijrs,rskl->ijkl", A, A), A)
        return _report("idempotent", w and _one_based(w), "T^2 != T at A[i,j,k,l]")
    w = first_difference(T.matrix.dot(T.matrix), T.matrix)
    return _report("idempotent", w and _one_based(w), "T^2 != T")


def _conv_stable(T: Endo, lam=None) -> PredicateReport:
    matrix_model = T.algebra.is_matrix_model
    coeffs = T.A if matrix_model else T.matrix
    if is_zero(coeffs):
        return PredicateReport("conv_stable", False, detail="zero map: lambda must be nonzero")
    conv = convolve(T, T)
    conv_coeffs = conv.A if matrix_model else conv.matrix
    if lam is None:
        if T.is_symbolic():
            raise ValueError("lambda must be supplied for polynomial scalars")
        idx = first_nonzero(coeffs)
        lam = Fraction(conv_coeffs[idx]) / Fraction(coeffs[idx])
    if lam == 0:
        return PredicateReport("conv_stable", False, lam=lam, detail="lambda must be nonzero")
    w = first_difference(conv_coeffs, coeffs * lam)
    rep = _report("conv_stable", w and _one_based(w), "T*T != lambda T")
    rep.lam = lam
    return rep


def _er(T: Endo) -> PredicateReport:
    r1, r2 = er_residuals(T)
    w = first_nonzero(r1)
    if w is not None:
        return PredicateReport("er", False, witness=_one_based(w),
                               detail="T(T(a)b) != T(a)T(b)")
    w = first_nonzero(r2)
    if w is not None:
        return PredicateReport("er", False, witness=_one_based(w),
                               detail="T(a)T(b) != T(aT(b))")
    return PredicateReport("er", True)


def _normal(T: Endo) -> PredicateReport:
    w = _central_witness(T)
    if w is not None:
        return PredicateReport("normal", False, witness=w, failed="central",
                               detail="T is not a scalar multiple of id")
    w = _central_witness(fourier(T))
    if w is not None:
        return PredicateReport("normal", False, witness=w, failed="fourier central",
                               detail="F(T) is not a scalar multiple of id")
    return PredicateReport("normal", True)


def check_predicate(T: Endo, which: str, lam=None) -> PredicateReport:
    """Evaluate one predicate. ``lam`` is only used (and required for
    polynomial scalars) by conv_stable and biprojection."""
    which = which.replace("-", "_")
    if which == "selfdual":
        return _selfdual(T)
    if which == "unital":
        return _unital(T)
    if which == "idempotent":
        return _idempotent(T)
    if which == "conv_stable":
        return _conv_stable(T, lam)
    if which == "er":
        return _er(T)
    if which == "normal":
        return _normal(T)
    if which == "biprojection":
        checks = {}
        result = PredicateReport("biprojection", True)
        for name, fn in (("selfdual", _selfdual), ("unital", _unital),
                         ("idempotent", _idempotent)):
            sub = fn(T)
            checks[name] = sub.holds
            if not sub.holds and result.holds:
                result = PredicateReport("biprojection", False, witness=sub.witness,
                                         failed=name, detail=sub.detail)
        sub = _conv_stable(T, lam)
        checks["conv_stable"] = sub.holds
        if not sub.holds and result.holds:
            result = PredicateReport("biprojection", False, witness=sub.witness,
                                     failed="conv_stable", detail=sub.detail)
        result.lam = sub.lam
        result.checks = checks
        return result
    raise ValueError(f"unknown predicate {which!r}; expected one of {', '.join(PREDICATES)}")


# -- two-dimensional subalgebras of M_2 -------------------------------------


def cayley_hamilton_subalgebra(X) -> FrobAlgebra:
    """span{I, X} inside M_2 with the restricted trace form.

    X^2 = Tr(X) X - det(X) I closes the span. Raises ScalarMatrixError for
    scalar X and DegenerateFormError when Tr(X)^2 - 4 det(X) = 0.
    """
    X = frac_array(X, (2, 2))
    if X[0, 1] == 0 and X[1, 0] == 0 and X[0, 0] == X[1, 1]:
        raise ScalarMatrixError("scalar matrix: span{I, X} is one-dimensional")
    tr = X[0, 0] + X[1, 1]
    det = X[0, 0] * X[1, 1] - X[0, 1] * X[1, 0]
    if tr * tr - 4 * det == 0:
        raise DegenerateFormError(
            message="Tr(X)^2 - 4 det(X) = 0 (repeated eigenvalue) so span{I, X} carries a "
                    "form which is degenerate with respect to the bilinear form Tr(XY)")
    c = zeros((2, 2, 2))
    c[0, 0, 0] = Fraction(1)
    c[0, 1, 1] = Fraction(1)
    c[1, 0, 1] = Fraction(1)
    c[1, 1, 0] = -det
    c[1, 1, 1] = tr
    alg = FrobAlgebra(c, [1, 0], [2, tr], labels=["I", "X"])
    alg.embedding = np.stack([identity(2).reshape(-1), X.reshape(-1)], axis=1)
    return alg
