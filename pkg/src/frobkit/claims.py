"""Polynomial systems for endomorphisms of M_n and the machine-checked claims.

``make_eqs(n)`` builds, in Q[A_i_j_k_l (1-based), x], the conditions on the
coefficients A[i,j,k,l] of T(E_{i,j}):

    eqs1  selfdual            A_ijkl - A_lkji
    eqs2  unital              sum_i A_iikl - [k == l]
    eqs3  idempotent          sum_rs A_ijrs A_rskl - A_ijkl
    eqs4  conv-stable (x)     sum_rs A_irks A_rjsl - x A_ijkl
    eqs5  exchange relations  t1 - t2, t2 - t3 for every (i, j, k, l, r, s)

Each claim below is decided by Groebner normal forms or dimension counts and
reported as pass, fail or resource-limited -- the last is never conflated
with the other two.
"""

from __future__ import annotations

import os
import time
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Callable


from .frobenius import Endo, check_predicate, matrix_algebra
from .groebner import (
    Budget,
    GroebnerBasis,
    ResourceLimitExceeded,
    groebner,
    ideal_dimension,
    normal_form,
    vector_space_dimension,
)
from .linalg import zeros
from .poly import Ideal, MPoly, Ring, rat

PASS, FAIL, LIMITED = "pass", "fail", "resource-limited"

DEFAULT_BUDGET_SECONDS = 600.0

# reference values for n = 2, 3; n = 1 is worked out by hand (A = 1, x free in J)
REFERENCE_DIMENSIONS = {1: (0, 1), 2: (2, 3), 3: (6, 7)}
REFERENCE_LAMBDA_ONE_DIMENSION = {1: 0, 2: 2, 3: 6}


def default_budget_seconds() -> float:
    value = os.environ.get("FROBKIT_BUDGET_SECONDS")
    return float(value) if value else DEFAULT_BUDGET_SECONDS


def variable_name(i: int, j: int, k: int, l: int) -> str:
    return f"A_{i}_{j}_{k}_{l}"


@dataclass
class EquationSet:
    n: int
    ring: Ring
    A: dict            # (i, j, k, l) 1-based -> MPoly variable
    x: MPoly
    eqs1: list
    eqs2: list
    eqs3: list
    eqs4: list
    eqs5: list

    def systems(self) -> dict[str, list]:
        return {"eqs1": self.eqs1, "eqs2": self.eqs2, "eqs3": self.eqs3,
                "eqs4": self.eqs4, "eqs5": self.eqs5}

    def point(self, T: Endo, lam=None) -> tuple:
        """Coordinates of T (and x = lam) as a point of the ring's affine space."""
        if not T.algebra.is_matrix_model or T.algebra.n != self.n:
            raise ValueError(f"need an endomorphism of M_{self.n}")
        coeffs = T.A
        values = [coeffs[i - 1, j - 1, k - 1, l - 1] for (i, j, k, l) in self.A]
        values.append(Fraction(0) if lam is None else lam)
        return tuple(values)

    def substitute(self, T: Endo, lam=None) -> dict[str, list]:
        """Values of every polynomial at the point given by T (and x = lam)."""
        pt = self.point(T, lam)
        out = {}
        for name, eqs in self.systems().items():
            out[name] = [_eval_at(p, pt) for p in eqs]
        return out


def _eval_at(p: MPoly, pt: tuple):
    total = 0
    for m, c in p.terms.items():
        term = c
        for v, e in zip(pt, m):
            if e:
                term = term * v ** e
        total = total + term
    return total


def make_eqs(n: int) -> EquationSet:
    if n < 1:
        raise ValueError("n must be positive")
    R = range(1, n + 1)
    indices = list(product(R, repeat=4))
    ring = Ring([variable_name(*p) for p in indices] + ["x"])
    gens = ring.gens()
    A = {p: gens[i] for i, p in enumerate(indices)}
    x = gens[-1]
    zero = ring.zero

    eqs1 = [A[i, j, k, l] - A[l, k, j, i] for i, j, k, l in indices]
    eqs2 = [
        sum((A[i, i, k, l] for i in R), zero) - (1 if k == l else 0)
        for k, l in product(R, repeat=2)
    ]
    eqs3 = [
        sum((A[i, j, r, s] * A[r, s, k, l] for r, s in product(R, repeat=2)), zero) - A[i, j, k, l]
        for i, j, k, l in indices
    ]
    eqs4 = [
        sum((A[i, r, k, s] * A[r, j, s, l] for r, s in product(R, repeat=2)), zero) - x * A[i, j, k, l]
        for i, j, k, l in indices
    ]
    eqs5 = []
    for i, j, k, l, r, s in product(R, repeat=6):
        t1 = sum((A[i, j, t, k] * A[t, l, r, s] for t in R), zero)
        t2 = sum((A[i, j, r, t] * A[k, l, t, s] for t in R), zero)
        t3 = sum((A[k, l, j, t] * A[i, t, r, s] for t in R), zero)
        eqs5.append(t1 - t2)
        eqs5.append(t2 - t3)
    return EquationSet(n, ring, A, x, eqs1, eqs2, eqs3, eqs4, eqs5)


# -- families of biprojections ---------------------------------------------

FAMILIES = ("identity", "diagonal", "trace", "bipro3-1", "bipro3-2", "bipro3-3")
FAMILY_PARAMS = {"bipro3-1": ("s",), "bipro3-2": ("u",), "bipro3-3": ("k", "t")}
FAMILY_LAMBDA = {"identity": lambda n: Fraction(n), "diagonal": lambda n: Fraction(1),
                 "trace": lambda n: Fraction(1, n), "bipro3-1": lambda n: Fraction(1),
                 "bipro3-2": lambda n: Fraction(1), "bipro3-3": lambda n: Fraction(1)}


class FamilyParameterError(ValueError):
    pass


def _param(params: dict, name: str):
    if name not in params:
        raise FamilyParameterError(f"missing parameter {name}")
    value = params[name]
    return value if isinstance(value, MPoly) else rat(value)


def family(name: str, n: int = 2, params: dict | None = None) -> Endo:
    """Endomorphisms of M_n from the standard examples and the M_2 classification.

    identity, diagonal X -> sum_i X_ii E_ii and the normalized trace
    X -> Tr(X)/n I exist for every n; the three bipro3 families are the
    lambda = 1 biprojections of M_2, parametrized by s; u != 0; k != 1/2, t != 0.
    ``s`` may be a polynomial, which gives the family over Q[s].
    """
    params = dict(params or {})
    expected = FAMILY_PARAMS.get(name, ())
    unknown = set(params) - set(expected)
    if name not in FAMILIES:
        raise FamilyParameterError(f"unknown family {name!r}; expected one of {', '.join(FAMILIES)}")
    if unknown:
        raise FamilyParameterError(f"family {name} takes no parameter(s) {', '.join(sorted(unknown))}")
    if name.startswith("bipro3") and n != 2:
        raise FamilyParameterError(f"family {name} lives on M_2, not M_{n}")
    alg = matrix_algebra(n)
    half = Fraction(1, 2)
    if name == "identity":
        return Endo.identity(alg)
    if name in ("diagonal", "trace"):
        A = zeros((n,) * 4)
        for i in range(n):
            if name == "diagonal":
                A[i, i, i, i] = Fraction(1)
            else:
                for k in range(n):
                    A[i, i, k, k] = Fraction(1, n)
        return Endo.from_coefficients(alg, A)
    if name == "bipro3-1":
        s = _param(params, "s")
        images = [[[[1, -s], [0, 0]], [[0, 0], [0, 0]]],
                  [[[-s, 2 * s * s], [0, s]], [[0, s], [0, 1]]]]
    elif name == "bipro3-2":
        u = _param(params, "u")
        if isinstance(u, MPoly):
            raise FamilyParameterError("bipro3-2 is not polynomial in u")
        if u == 0:
            raise FamilyParameterError("bipro3-2 requires u != 0")
        images = [[[[half, 0], [0, half]], [[0, half], [1 / (4 * u), 0]]],
                  [[[0, u], [half, 0]], [[half, 0], [0, half]]]]
    else:
        k = _param(params, "k")
        t = _param(params, "t")
        if isinstance(k, MPoly) or isinstance(t, MPoly):
            raise FamilyParameterError("bipro3-3 is not polynomial in k, t")
        if k == half:
            raise FamilyParameterError("bipro3-3 requires k != 1/2")
        if t == 0:
            raise FamilyParameterError("bipro3-3 requires t != 0")
        a = (k - 1) * (k - half) / t
        images = [[[[k, a], [-t, 1 - k]], [[-t, 1 - k], [t * t / (k - half), t]]],
                  [[[a, (k - 1) * a / t], [1 - k, -a]], [[1 - k, -a], [t, k]]]]
    return Endo.from_images(alg, images)


def family_lambda(name: str, n: int) -> Fraction:
    return FAMILY_LAMBDA[name](n)


# samples used by the acceptance criteria
SAMPLES = (
    [("bipro3-1", {"s": s}) for s in (Fraction(0), Fraction(1), Fraction(3), Fraction(-2, 5))]
    + [("bipro3-2", {"u": u}) for u in (Fraction(2), Fraction(-1), Fraction(1, 3))]
    + [("bipro3-3", {"k": k, "t": t})
       for k, t in ((Fraction(2), Fraction(1)), (Fraction(0), Fraction(1)),
                    (Fraction(3, 2), Fraction(-2)))]
)


# -- claims ---------------------------------------------------------------


@dataclass
class ClaimReport:
    claim: str
    status: str
    evidence: dict = field(default_factory=dict)
    seconds: float = 0.0

    def to_dict(self) -> dict:
        return {"claim": self.claim, "status": self.status,
                "evidence": self.evidence, "seconds": round(self.seconds, 3)}


class ClaimSuite:
    """Runs claims for one n, sharing Groebner bases between them.

    Each claim gets its own wall-clock budget of ``budget_seconds``.
    """

    def __init__(self, n: int, budget_seconds: float | None = None,
                 max_pairs: int | None = None):
        if n < 1:
            raise ValueError("n must be positive")
        self.n = n
        self.budget_seconds = default_budget_seconds() if budget_seconds is None else budget_seconds
        if self.budget_seconds <= 0:
            raise ValueError("budget must be positive")
        self.max_pairs = max_pairs
        self._eqs: EquationSet | None = None
        self._bases: dict[str, GroebnerBasis] = {}
        self._deadline = None

    @property
    def eqs(self) -> EquationSet:
        if self._eqs is None:
            self._eqs = make_eqs(self.n)
        return self._eqs

    def _gb(self, key: str, gens_fn: Callable[[], list]) -> GroebnerBasis:
        if key not in self._bases:
            deadline = self._deadline or time.monotonic() + self.budget_seconds
            left = deadline - time.monotonic()
            if left <= 0:
                raise ResourceLimitExceeded("time budget exceeded", {})
            ideal = Ideal(self.eqs.ring, gens_fn())
            self._bases[key] = groebner(ideal, Budget(self.max_pairs, left))
        return self._bases[key]

    def gb_I(self) -> GroebnerBasis:
        e = self.eqs
        return self._gb("I", lambda: e.eqs1 + e.eqs2 + e.eqs3 + e.eqs4)

    def gb_J(self) -> GroebnerBasis:
        e = self.eqs
        return self._gb("J", lambda: e.eqs1 + e.eqs2 + e.eqs3 + e.eqs5)

    def gb_fiber(self, lam: Fraction) -> GroebnerBasis:
        I = self.gb_I()
        return self._gb(f"I+<x-{lam}>", lambda: list(I.basis) + [self.eqs.x - lam])

    def gb_unital_er(self) -> GroebnerBasis:
        e = self.eqs
        return self._gb("unital+ER", lambda: e.eqs2 + e.eqs5)

    # individual claims --------------------------------------------------

    def _membership(self, polys: list, gb: GroebnerBasis, label: str) -> dict:
        nonzero = [i for i, p in enumerate(polys) if not normal_form(p, gb).is_zero()]
        ev = {"n": self.n, label: len(polys), "basis_size": len(gb.basis),
              "nonzero_normal_forms": len(nonzero)}
        if nonzero:
            ev["first_nonmember"] = nonzero[0]
        return ev

    def bipro_implies_er(self) -> tuple[str, dict]:
        ev = self._membership(self.eqs.eqs5, self.gb_I(), "eqs5_checked")
        return (PASS if ev["nonzero_normal_forms"] == 0 else FAIL), ev

    def unital_er_implies_idempotent(self) -> tuple[str, dict]:
        ev = self._membership(self.eqs.eqs3, self.gb_unital_er(), "eqs3_checked")
        return (PASS if ev["nonzero_normal_forms"] == 0 else FAIL), ev

    def dimensions(self) -> tuple[str, dict]:
        if self.n not in REFERENCE_DIMENSIONS:
            raise ValueError(f"no reference dimensions for n = {self.n}")
        dims = [ideal_dimension(self.gb_I()), ideal_dimension(self.gb_J())]
        expected = list(REFERENCE_DIMENSIONS[self.n])
        ev = {"n": self.n, "dimensions": dims, "expected": expected}
        return (PASS if dims == expected else FAIL), ev

    def lambda_spectrum(self) -> tuple[str, dict]:
        n = self.n
        if n not in REFERENCE_LAMBDA_ONE_DIMENSION:
            raise ValueError(f"no reference values for n = {n}")
        x = self.eqs.x
        low, high = Fraction(1, n), Fraction(n)
        cubic = (x - low) * (x - 1) * (x - high)
        member = normal_form(cubic, self.gb_I()).is_zero()
        vs_low = vector_space_dimension(self.gb_fiber(low))
        vs_high = vector_space_dimension(self.gb_fiber(high))
        dim_one = ideal_dimension(self.gb_fiber(Fraction(1)))
        ev = {
            "n": n,
            "cubic_in_I": member,
            "fiber_vector_space_dimension": {str(low): vs_low, str(high): vs_high},
            "lambda_1_dimension": dim_one,
            "expected_lambda_1_dimension": REFERENCE_LAMBDA_ONE_DIMENSION[n],
        }
        ok = (member and vs_low == 1 and vs_high == 1
              and dim_one == REFERENCE_LAMBDA_ONE_DIMENSION[n])
        return (PASS if ok else FAIL), ev

    def substitution(self) -> tuple[str, dict]:
        """Plug concrete biprojections into eqs1-eqs5; every value must vanish."""
        n = self.n
        instances = [(name, {}) for name in ("identity", "diagonal", "trace")]
        if n == 2:
            instances += list(SAMPLES)
        checked, failures = [], []
        for name, params in instances:
            T = family(name, n, params)
            values = self.eqs.substitute(T, family_lambda(name, n))
            label = name + "".join(f" {k}={v}" for k, v in params.items())
            checked.append(label)
            for system, vals in values.items():
                if any(v != 0 for v in vals):
                    failures.append(f"{label}: {system}")
        ev = {"n": n, "instances": checked, "failures": failures}
        return (PASS if not failures else FAIL), ev

    # dispatch -----------------------------------------------------------

    def run(self, claim: str) -> ClaimReport:
        fn = CLAIMS.get(claim)
        if fn is None:
            raise KeyError(claim)
        start = time.monotonic()
        self._deadline = start + self.budget_seconds
        try:
            status, evidence = fn(self)
        except ResourceLimitExceeded as exc:
            status = LIMITED
            evidence = {"n": self.n, "reason": exc.reason}
        return ClaimReport(claim, status, evidence, time.monotonic() - start)

    def run_all(self, claims=None) -> list[ClaimReport]:
        return [self.run(c) for c in (claims or CLAIM_IDS)]


CLAIMS = {
    "bipro-implies-er": ClaimSuite.bipro_implies_er,
    "dimensions": ClaimSuite.dimensions,
    "lambda-spectrum": ClaimSuite.lambda_spectrum,
    "unital-er-implies-idempotent": ClaimSuite.unital_er_implies_idempotent,
    "substitution": ClaimSuite.substitution,
}
CLAIM_IDS = tuple(CLAIMS)


def claim_bipro_implies_er(n: int, budget_seconds: float | None = None) -> ClaimReport:
    return ClaimSuite(n, budget_seconds).run("bipro-implies-er")


def claim_dimensions(n: int, budget_seconds: float | None = None) -> ClaimReport:
    return ClaimSuite(n, budget_seconds).run("dimensions")


def claim_lambda_spectrum(n: int, budget_seconds: float | None = None) -> ClaimReport:
    return ClaimSuite(n, budget_seconds).run("lambda-spectrum")


def claim_unital_er_implies_idempotent(n: int, budget_seconds: float | None = None) -> ClaimReport:
    return ClaimSuite(n, budget_seconds).run("unital-er-implies-idempotent")


def biprojection_report(T: Endo, lam=None) -> dict:
    """Predicate summary used by the acceptance suite and the CLI."""
    bip = check_predicate(T, "biprojection", lam)
    er = check_predicate(T, "er")
    return {"biprojection": bip.holds, "lambda": bip.lam, "er": er.holds, "checks": bip.checks}


__all__ = [
    "EquationSet", "make_eqs", "family", "family_lambda", "FAMILIES", "SAMPLES",
    "ClaimReport", "ClaimSuite", "CLAIM_IDS", "PASS", "FAIL", "LIMITED",
    "claim_bipro_implies_er", "claim_dimensions", "claim_lambda_spectrum",
    "claim_unital_er_implies_idempotent", "FamilyParameterError",
]
