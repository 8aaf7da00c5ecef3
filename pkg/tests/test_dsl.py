import pytest
from hypothesis import given, strategies as st

from frobkit.claims import family
from frobkit.dsl import (
    AXIOM_CORPUS,
    ER_CORPUS,
    ArityError,
    Atom,
    Compose,
    EvalError,
    ParseError,
    Ref,
    Tensor,
    assert_equal,
    evaluate,
    parse,
    read_corpus,
    to_text,
    typecheck,
)

leaves = st.one_of(st.sampled_from(["id", "m", "e", "delta", "eps", "ev", "coev"]).map(Atom),
                   st.sampled_from(["b", "T2"]).map(Ref))
exprs = st.recursive(
    leaves,
    lambda sub: st.one_of(st.builds(Compose, sub, sub), st.builds(Tensor, sub, sub)),
    max_leaves=8,
)


@given(exprs)
def test_text_round_trip(expr):
    assert parse(to_text(expr)) == expr


def test_precedence_and_associativity():
    assert parse("m . id ox id") == Compose(Atom("m"), Tensor(Atom("id"), Atom("id")))
    assert parse("m . m . id") == Compose(Compose(Atom("m"), Atom("m")), Atom("id"))
    assert typecheck(parse("m . (m ox id)")) == (3, 1)


def test_parse_errors_carry_offsets():
    with pytest.raises(ParseError) as info:
        parse("m . (id ox id")
    assert info.value.offset == 13
    with pytest.raises(ParseError, match="unknown atom"):
        parse("m . foo")
    with pytest.raises(ParseError, match="unexpected character"):
        parse("m + id")


def test_arity_errors():
    with pytest.raises(ArityError) as info:
        typecheck(parse("m . e"))
    assert info.value.offset == 2
    with pytest.raises(ArityError, match="cap"):
        typecheck(parse("coev ox coev ox coev ox coev"))


def test_unbound_reference(m2):
    with pytest.raises(EvalError, match="unbound"):
        evaluate("#b", m2)


def test_scalar_value(m2, m3):
    assert evaluate("eps . e", m2).scalar() == 2
    assert evaluate("ev . coev", m3).scalar() == 9


@pytest.mark.parametrize("alg_name", ["m2", "m3"])
def test_axiom_corpus(alg_name, request):
    alg = request.getfixturevalue(alg_name)
    for lineno, lhs, rhs in read_corpus(AXIOM_CORPUS):
        assert assert_equal(lhs, rhs, alg).equal, (lineno, lhs, rhs)


@pytest.mark.parametrize("n", [2, 3])
def test_er_corpus_for_diagonal(n, request):
    alg = request.getfixturevalue(f"m{n}")
    b = family("diagonal", n)
    for _, lhs, rhs in read_corpus(ER_CORPUS):
        assert assert_equal(lhs, rhs, alg, {"b": b}).equal


def test_inequality_reports_entry(m2):
    rep = assert_equal("m", "m . (id ox id)", m2)
    assert rep.equal
    rep = assert_equal("id", "e . eps", m2)
    assert not rep.equal and rep.index is not None


def test_corpus_comments():
    text = "# header\nm == m  # trailing\n\n#b == #b\n"
    assert read_corpus(text) == [(2, "m", "m"), (4, "#b", "#b")]
    with pytest.raises(ParseError):
        read_corpus("m m\n")
