"""Golden-file tests for every subcommand; set FROBKIT_REGEN_GOLDEN=1 to rewrite."""

import os
import re
from pathlib import Path

import pytest

from frobkit.cli import main

HERE = Path(__file__).parent
DATA = HERE / "data"
GOLDEN = HERE / "golden"

CASES = [
    ("check_diag_biprojection", ["check", "--endo", "diag2.json", "--predicate", "biprojection"], 0),
    ("check_diag_json", ["check", "--endo", "diag2.json", "--predicate", "biprojection", "--json"], 0),
    ("check_zero_conv", ["check", "--endo", "zero2.json", "--predicate", "conv-stable"], 1),
    ("check_trace_normal", ["check", "--endo", "trace2.json", "--predicate", "normal"], 1),
    ("check_poly_lambda", ["check", "--endo", "bipro3-1-poly.json", "--predicate", "biprojection",
                           "--lambda", "1"], 0),
    ("verify_n2_all", ["verify-claims", "--n", "2", "--claim", "all", "--json"], 0),
    ("verify_n1_dimensions", ["verify-claims", "--n", "1", "--claim", "dimensions"], 0),
    ("eval_frobenius", ["eval", "--n", "2", "--expr", "delta . m",
                        "--assert-equal", "(m ox id) . (id ox delta)"], 0),
    ("eval_er_bound", ["eval", "--n", "2", "--expr", "#b . m . (#b ox id)", "--bind", "b=diag2.json",
                       "--assert-equal", "m . (#b ox #b)"], 0),
    ("eval_unequal", ["eval", "--n", "2", "--expr", "id", "--assert-equal", "e . eps", "--json"], 1),
    ("eval_tensor_json", ["eval", "--n", "2", "--expr", "coev", "--json"], 0),
    ("eval_scalar", ["eval", "--n", "3", "--expr", "eps . e"], 0),
    ("eval_corpus", ["eval", "--n", "2", "--corpus", "corpus.txt", "--bind", "b=diag2.json"], 0),
    ("split_diag", ["split", "--endo", "diag2.json"], 0),
    ("split_trace", ["split", "--endo", "trace2.json"], 0),
    ("embed_diag", ["embed", "--span", "span_diag.json"], 0),
    ("family_trace3", ["family", "--name", "trace", "--n", "3"], 0),
    ("family_bipro3_3", ["family", "--name", "bipro3-3", "--param", "k=2", "--param", "t=1"], 0),
    ("family_random", ["--seed", "7", "family", "--name", "random-idempotent", "--rank", "2"], 0),
    ("gb_ideal", ["gb", "--ideal", "ideal.json"], 0),
    ("gb_ideal_lex_json", ["gb", "--ideal", "ideal.json", "--order", "lex", "--json"], 0),
]

ERRORS = [
    (["check", "--endo", "truncated.json", "--predicate", "er"], 2, "invalid JSON at line"),
    (["check", "--endo", "missing.json", "--predicate", "er"], 2, "cannot read"),
    (["check", "--endo", "diag2.json", "--predicate", "bogus"], 2, "invalid choice"),
    (["verify-claims", "--n", "2", "--claim", "no-such"], 2, "unknown claim"),
    (["verify-claims", "--n", "2", "--budget-seconds", "0"], 2, "budget must be positive"),
    (["verify-claims", "--n", "3", "--claim", "bipro-implies-er", "--budget-seconds", "1"], 3, ""),
    (["eval", "--n", "2", "--expr", "m . e"], 2, "at offset 2"),
    (["eval", "--n", "2", "--expr", "m . (id"], 2, "unbalanced"),
    (["eval", "--n", "2", "--expr", "#b"], 2, "unbound"),
    (["family", "--name", "bipro3-3", "--param", "k=1/2", "--param", "t=1"], 2, "k != 1/2"),
    (["family", "--name", "bipro3-2", "--param", "u"], 2, "name=value"),
    (["embed", "--span", "span_nilpotent.json"], 1, "degenerate with respect to the bilinear form"),
    (["split", "--endo", "zero2.json"], 1, ""),
    ([], 2, "required"),
]


def _mask(text: str) -> str:
    text = re.sub(r'"seconds": [0-9.]+', '"seconds": 0', text)
    return re.sub(r"\s[0-9]+\.[0-9]{2}s\s", " 0.00s ", text)


@pytest.mark.parametrize("name,argv,code", CASES, ids=[c[0] for c in CASES])
def test_golden(name, argv, code, capsys, monkeypatch):
    monkeypatch.chdir(DATA)
    assert main(argv) == code
    out = _mask(capsys.readouterr().out)
    path = GOLDEN / f"{name}.txt"
    if os.environ.get("FROBKIT_REGEN_GOLDEN"):
        path.write_text(out)
    assert out == path.read_text()


@pytest.mark.parametrize("argv,code,message", ERRORS)
def test_exit_codes(argv, code, message, capsys, monkeypatch):
    monkeypatch.chdir(DATA)
    assert main(argv) == code
    assert message in capsys.readouterr().err


def test_budget_env_var(monkeypatch, capsys):
    monkeypatch.chdir(DATA)
    monkeypatch.setenv("FROBKIT_BUDGET_SECONDS", "0.5")
    assert main(["verify-claims", "--n", "3", "--claim", "bipro-implies-er", "--json"]) == 3
    assert '"status": "resource-limited"' in capsys.readouterr().out
    monkeypatch.setenv("FROBKIT_BUDGET_SECONDS", "soon")
    assert main(["verify-claims", "--n", "2"]) == 2


def test_family_then_check(tmp_path, capsys):
    out = tmp_path / "tr3.json"
    assert main(["family", "--name", "trace", "--n", "3", "--out", str(out)]) == 0
    assert main(["check", "--endo", str(out), "--predicate", "biprojection"]) == 0
    assert "lambda = 1/3" in capsys.readouterr().out


def test_seed_changes_random_family(capsys):
    main(["--seed", "1", "family", "--name", "random-idempotent"])
    a = capsys.readouterr().out
    main(["--seed", "2", "family", "--name", "random-idempotent"])
    b = capsys.readouterr().out
    main(["--seed", "1", "family", "--name", "random-idempotent"])
    assert capsys.readouterr().out == a != b


def test_split_writes_bundle(tmp_path):
    out = tmp_path / "bundle.json"
    assert main(["split", "--endo", str(DATA / "diag2.json"), "--out", str(out)]) == 0
    import json
    bundle = json.loads(out.read_text())
    assert bundle["rank"] == 2 and all(bundle["embedding"].values())
