from fractions import Fraction

import pytest
import sympy
from hypothesis import given, strategies as st

from conftest import sympy_reduced_basis, to_sympy
from frobkit.claims import (
    CLAIM_IDS,
    LIMITED,
    PASS,
    SAMPLES,
    ClaimSuite,
    FamilyParameterError,
    default_budget_seconds,
    family,
    family_lambda,
    make_eqs,
)
from frobkit.corpus import make_rng, random_endo
from frobkit.frobenius import check_predicate, matrix_algebra
from frobkit.poly import Ring


@pytest.fixture(scope="module")
def eqs2():
    return make_eqs(2)


@pytest.fixture(scope="module")
def suite2():
    return ClaimSuite(2, budget_seconds=300)


@pytest.mark.parametrize("n", [1, 2, 3])
def test_equation_counts(n):
    e = make_eqs(n)
    assert (len(e.eqs1), len(e.eqs2), len(e.eqs3), len(e.eqs4), len(e.eqs5)) == (
        n ** 4, n ** 2, n ** 4, n ** 4, 2 * n ** 6)
    assert e.ring.nvars == n ** 4 + 1
    assert e.ring.names[0] == "A_1_1_1_1" and e.ring.names[-1] == "x"


def test_equation_shapes(eqs2):
    A, x = eqs2.A, eqs2.x
    assert eqs2.eqs1[1] == A[1, 1, 1, 2] - A[2, 1, 1, 1]
    assert eqs2.eqs2[0] == A[1, 1, 1, 1] + A[2, 2, 1, 1] - 1
    # sum_rs A_1r1s A_r1s1 - x A_1111
    expected = sum((A[1, r, 1, s] * A[r, 1, s, 1] for r in (1, 2) for s in (1, 2)),
                   eqs2.ring.zero) - x * A[1, 1, 1, 1]
    assert eqs2.eqs4[0] == expected


@pytest.mark.parametrize("key", ["I", "J", "unital+ER"])
def test_bases_match_sympy(suite2, key):
    gb = {"I": suite2.gb_I, "J": suite2.gb_J, "unital+ER": suite2.gb_unital_er}[key]()
    expected, symbols = sympy_reduced_basis(list(gb.ideal.generators), gb.ring)
    assert {sympy.expand(to_sympy(g, symbols)) for g in gb.basis} == expected


def test_n2_claims_pass(suite2):
    for claim in CLAIM_IDS:
        rep = suite2.run(claim)
        assert rep.status == PASS, rep.to_dict()


def test_n2_evidence(suite2):
    assert suite2.run("dimensions").evidence["dimensions"] == [2, 3]
    ev = suite2.run("lambda-spectrum").evidence
    assert ev["fiber_vector_space_dimension"] == {"1/2": 1, "2": 1}
    assert ev["lambda_1_dimension"] == 2


def test_n1_claims_pass():
    suite = ClaimSuite(1, 60)
    reports = {c: suite.run(c) for c in CLAIM_IDS}
    assert all(r.status == PASS for r in reports.values())
    # for n = 1 the system is A = 1 with x free in J
    assert reports["dimensions"].evidence["dimensions"] == [0, 1]


def test_reports_are_deterministic():
    a = ClaimSuite(2, 300).run("bipro-implies-er").to_dict()
    b = ClaimSuite(2, 300).run("bipro-implies-er").to_dict()
    a.pop("seconds"), b.pop("seconds")
    assert a == b


def test_n3_resource_limited():
    rep = ClaimSuite(3, budget_seconds=0.5).run("bipro-implies-er")
    assert rep.status == LIMITED
    assert rep.seconds < 30


def test_missing_reference_values():
    with pytest.raises(ValueError):
        ClaimSuite(4, 1).run("dimensions")


def test_budget_from_environment(monkeypatch):
    monkeypatch.setenv("FROBKIT_BUDGET_SECONDS", "12.5")
    assert default_budget_seconds() == 12.5
    assert ClaimSuite(2).budget_seconds == 12.5
    monkeypatch.delenv("FROBKIT_BUDGET_SECONDS")
    assert default_budget_seconds() == 600


@pytest.mark.parametrize("n", [2, 3])
def test_substitution_of_standard_maps(n):
    e = make_eqs(n)
    for name in ("identity", "diagonal", "trace"):
        values = e.substitute(family(name, n), family_lambda(name, n))
        assert all(v == 0 for vals in values.values() for v in vals), name


@pytest.mark.parametrize("name,params", SAMPLES)
def test_families_are_lambda_one_biprojections(name, params):
    T = family(name, 2, params)
    rep = check_predicate(T, "biprojection")
    assert rep.holds and rep.lam == 1
    assert check_predicate(T, "er").holds


def test_first_family_over_polynomial_ring(eqs2):
    s = Ring(["s"]).var("s")
    T = family("bipro3-1", 2, {"s": s})
    assert check_predicate(T, "biprojection", Fraction(1)).holds
    assert check_predicate(T, "er").holds
    values = eqs2.substitute(T, Fraction(1))
    assert all(v == 0 for vals in values.values() for v in vals)


@pytest.mark.parametrize("name,params", [
    ("bipro3-3", {"k": "1/2", "t": "1"}),
    ("bipro3-3", {"k": "2", "t": "0"}),
    ("bipro3-2", {"u": "0"}),
    ("bipro3-1", {}),
    ("bipro3-1", {"s": "1", "q": "2"}),
    ("nope", {}),
])
def test_excluded_parameters(name, params):
    with pytest.raises(FamilyParameterError):
        family(name, 2, params)


def test_m2_families_need_n2():
    with pytest.raises(FamilyParameterError):
        family("bipro3-1", 3, {"s": 0})


@given(st.integers(0, 2 ** 32 - 1))
def test_equations_agree_with_predicates(seed):
    # a zero value of each system is exactly the corresponding predicate
    e = make_eqs(2)
    rng = make_rng(seed)
    T = random_endo(rng, matrix_algebra(2), density=0.3)
    lam = Fraction(int(rng.integers(-2, 3)))
    values = e.substitute(T, lam)
    zero = {k: all(v == 0 for v in vals) for k, vals in values.items()}
    assert zero["eqs1"] == check_predicate(T, "selfdual").holds
    assert zero["eqs2"] == check_predicate(T, "unital").holds
    assert zero["eqs3"] == check_predicate(T, "idempotent").holds
    assert zero["eqs5"] == check_predicate(T, "er").holds
    if lam != 0 and any(T.matrix.reshape(-1)):
        assert zero["eqs4"] == check_predicate(T, "conv_stable", lam).holds
