import json
from pathlib import Path

import pytest
from hypothesis import given, strategies as st

from frobkit.claims import family
from frobkit.corpus import make_rng, random_endo
from frobkit.frobenius import matrix_algebra
from frobkit.poly import Ring
from frobkit.serialize import (
    FormatError,
    dumps,
    endo_from_json,
    endo_to_json,
    ideal_from_json,
    ideal_to_json,
    load_endo,
    load_ideal,
)

DATA = Path(__file__).parent / "data"


@given(st.integers(0, 2 ** 32 - 1))
def test_endo_round_trip(seed):
    T = random_endo(make_rng(seed), matrix_algebra(2))
    text = dumps(endo_to_json(T))
    assert endo_from_json(json.loads(text)) == T
    assert dumps(endo_to_json(endo_from_json(json.loads(text)))) == text


def test_rationals_are_reduced_strings():
    data = endo_to_json(family("trace", 2))
    assert data["A"][0][0][0][0] == "1/2"
    assert data["A"][0][1][0][0] == "0/1"


def test_polynomial_endo_round_trip():
    T = load_endo(DATA / "bipro3-1-poly.json")
    s = Ring(["s"]).var("s")
    assert T == family("bipro3-1", 2, {"s": s})


def test_ideal_round_trip():
    I = load_ideal(DATA / "ideal.json")
    again = ideal_from_json(ideal_to_json(I))
    assert again.generators == I.generators and again.ring == I.ring


@pytest.mark.parametrize("data,where", [
    ({"model": "tensor", "n": 2, "A": []}, "model"),
    ({"model": "matrix", "n": 0, "A": []}, "n"),
    ({"model": "matrix", "n": 1, "A": [[[["x"]]]]}, "A[0][0][0][0]"),
    ({"model": "matrix", "n": 1, "A": [[[[1.5]]]]}, "A[0][0][0][0]"),
    ({"model": "matrix", "n": 1, "A": [[["1"]]]}, "A"),
    ({"model": "matrix", "n": 1, "A": [[[["1", "2"]]]]}, "A"),
])
def test_malformed_endo(data, where):
    with pytest.raises(FormatError, match=f"src: {where}".replace("[", r"\[")):
        endo_from_json(data, "src")


def test_malformed_ideal():
    with pytest.raises(FormatError, match="exps"):
        ideal_from_json({"variables": ["x"], "generators": [[{"coeff": "1", "exps": [1, 2]}]]})
    with pytest.raises(FormatError, match="order"):
        ideal_from_json({"variables": ["x"], "order": "grlex", "generators": []})


def test_truncated_file_reports_location():
    with pytest.raises(FormatError, match=r"truncated.json: invalid JSON at line \d+ column \d+"):
        load_endo(DATA / "truncated.json")
