"""frobkit command line.

Exit codes: 0 verified/true, 1 mathematically false, 2 input or usage error,
3 resource limit.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction
from pathlib import Path

from . import __version__
from .claims import (
    CLAIM_IDS,
    DEFAULT_BUDGET_SECONDS,
    FAIL,
    FAMILIES,
    LIMITED,
    PASS,
    ClaimSuite,
    FamilyParameterError,
    family,
)
from .corpus import make_rng, random_idempotent
from .dsl import DSLError, assert_equal, evaluate, read_corpus
from .frobenius import (
    PREDICATES,
    AlgebraMismatchError,
    FrobeniusError,
    check_predicate,
    matrix_algebra,
)
from .groebner import Budget, ResourceLimitExceeded, groebner, ideal_dimension, vector_space_dimension
from .serialize import (
    FormatError,
    array_to_json,
    basis_to_json,
    dumps,
    endo_to_json,
    load_endo,
    load_ideal,
    load_json,
    split_bundle,
)
from .poly import format_rat, rat
from .subalgebra import (
    NotClosedError,
    NotIdempotentError,
    induce_structure,
    split_idempotent,
    subalgebra_to_idempotent,
    verify_embedding,
)

OK, FALSE, USAGE, RESOURCE = 0, 1, 2, 3


class UsageError(Exception):
    pass


def _say(text: str = ""):
    sys.stdout.write(text + "\n")


def _err(text: str):
    sys.stderr.write(f"frobkit: {text}\n")


def _emit(obj, out: str | None):
    text = dumps(obj)
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _scalar_text(v):
    if v is None:
        return None
    if isinstance(v, Fraction):
        return format_rat(v)
    return str(v)


def _human(v) -> str:
    return "None" if v is None else str(v)


def _budget_seconds(value) -> float:
    if value is None:
        env = os.environ.get("FROBKIT_BUDGET_SECONDS")
        if env is None:
            return DEFAULT_BUDGET_SECONDS
        try:
            value = float(env)
        except ValueError:
            raise UsageError(f"FROBKIT_BUDGET_SECONDS must be a number, got {env!r}") from None
    if value <= 0:
        raise UsageError("budget must be positive")
    return value


def _parse_kv(items, what: str) -> dict:
    out = {}
    for item in items or ():
        name, sep, value = item.partition("=")
        if not sep or not name:
            raise UsageError(f"{what} must look like name=value, got {item!r}")
        out[name] = value
    return out


# -- subcommands -------------------------------------------------------------


def cmd_check(args) -> int:
    T = load_endo(args.endo)
    lam = None
    if args.lam is not None:
        try:
            lam = rat(args.lam)
        except (ValueError, ZeroDivisionError):
            raise UsageError(f"--lambda must be rational, got {args.lam!r}") from None
    try:
        rep = check_predicate(T, args.predicate, lam)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    if args.json:
        _emit({
            "predicate": rep.predicate,
            "holds": rep.holds,
            "lambda": _scalar_text(rep.lam),
            "witness": None if rep.witness is None else list(rep.witness),
            "failed": rep.failed,
            "detail": rep.detail,
            "checks": rep.checks,
        }, None)
    else:
        line = f"{rep.predicate}: {'true' if rep.holds else 'false'}"
        if rep.lam is not None:
            line += f" (lambda = {_human(rep.lam)})"
        _say(line)
        if not rep.holds:
            parts = [p for p in (rep.failed, rep.detail) if p]
            if rep.witness is not None:
                parts.append(f"witness {rep.witness}")
            _say("  " + "; ".join(parts))
    return OK if rep.holds else FALSE


def cmd_verify_claims(args) -> int:
    selected = list(CLAIM_IDS) if "all" in args.claim else list(dict.fromkeys(args.claim))
    unknown = [c for c in selected if c not in CLAIM_IDS]
    if unknown:
        raise UsageError(f"unknown claim {unknown[0]!r}; expected one of {', '.join(CLAIM_IDS)} or all")
    suite = ClaimSuite(args.n, _budget_seconds(args.budget_seconds), args.max_pairs)
    reports = []
    for claim in selected:
        try:
            reports.append(suite.run(claim))
        except ValueError as exc:
            raise UsageError(str(exc)) from None
    if args.json:
        _emit([r.to_dict() for r in reports], None)
    else:
        for r in reports:
            _say(f"{r.claim:32s} {r.status:17s} {r.seconds:8.2f}s  {json.dumps(r.evidence)}")
    statuses = {r.status for r in reports}
    if FAIL in statuses:
        return FALSE
    if LIMITED in statuses:
        return RESOURCE
    assert statuses <= {PASS}
    return OK


def _bindings(args, algebra):
    out = {}
    for name, path in _parse_kv(args.bind, "--bind").items():
        T = load_endo(path)
        if not T.algebra.same_as(algebra):
            raise UsageError(f"binding {name}: {path} is not an endomorphism of M_{args.n}")
        out[name] = T
    return out


def _report_equality(rep, as_json: bool):
    if as_json:
        return {
            "lhs": rep.lhs, "rhs": rep.rhs, "equal": rep.equal, "arity": list(rep.arity),
            "index": None if rep.index is None else list(rep.index),
            "lhs_value": _scalar_text(rep.lhs_value), "rhs_value": _scalar_text(rep.rhs_value),
        }
    line = f"{rep.lhs} == {rep.rhs}: {'equal' if rep.equal else 'NOT equal'}"
    if not rep.equal:
        line += (f" (first difference at entry {rep.index}: "
                 f"{_human(rep.lhs_value)} vs {_human(rep.rhs_value)})")
    return line


def cmd_eval(args) -> int:
    if args.n < 1:
        raise UsageError("--n must be positive")
    algebra = matrix_algebra(args.n)
    bindings = _bindings(args, algebra)
    if args.corpus:
        if args.expr or args.assert_equal:
            raise UsageError("--corpus cannot be combined with --expr")
        try:
            text = Path(args.corpus).read_text()
        except OSError as exc:
            raise FormatError(f"{args.corpus}: cannot read: {exc.strerror}") from None
        results = []
        for lineno, lhs, rhs in read_corpus(text):
            try:
                results.append(assert_equal(lhs, rhs, algebra, bindings))
            except DSLError as exc:
                raise DSLError(f"{args.corpus} line {lineno}: {exc}") from None
        if args.json:
            _emit([_report_equality(r, True) for r in results], None)
        else:
            for r in results:
                _say(_report_equality(r, False))
        return OK if all(r.equal for r in results) else FALSE
    if not args.expr:
        raise UsageError("one of --expr or --corpus is required")
    if args.assert_equal:
        rep = assert_equal(args.expr, args.assert_equal, algebra, bindings)
        if args.json:
            _emit(_report_equality(rep, True), None)
        else:
            _say(_report_equality(rep, False))
        return OK if rep.equal else FALSE
    tm = evaluate(args.expr, algebra, bindings)
    if args.json:
        _emit({"source": tm.source, "target": tm.target, "array": array_to_json(tm.array)}, None)
    else:
        _say(f"X^{tm.source} -> X^{tm.target}, {tm.array.shape[0]}x{tm.array.shape[1]} matrix:")
        for row in tm.array:
            _say("  " + " ".join(f"{_human(v):>6s}" for v in row))
    return OK


def cmd_split(args) -> int:
    T = load_endo(args.endo)
    try:
        split = split_idempotent(T)
    except NotIdempotentError as exc:
        _err(str(exc))
        return FALSE
    induced = induce_structure(split, validate=False)
    report = verify_embedding(split, induced)
    _emit(split_bundle(split, induced, report), args.out)
    return OK if induced.failure is None and report.ok else FALSE


def cmd_embed(args) -> int:
    data = load_json(args.span)
    algebra = matrix_algebra(args.n)
    d = algebra.dim
    vectors = data.get("span") if isinstance(data, dict) else data
    if not isinstance(vectors, list) or not vectors:
        raise FormatError(f"{args.span}: expected a nonempty list of {d}-vectors")
    rows = []
    for i, vec in enumerate(vectors):
        if not isinstance(vec, list) or len(vec) != d:
            raise FormatError(f"{args.span}: span[{i}]: expected a vector of length {d}")
        try:
            rows.append([rat(v) for v in vec])
        except (ValueError, TypeError, ZeroDivisionError):
            raise FormatError(f"{args.span}: span[{i}]: entries must be rationals 'p/q'") from None
    u = [[rows[c][r] for c in range(len(rows))] for r in range(d)]
    try:
        b = subalgebra_to_idempotent(u, algebra)
    except (NotClosedError, FrobeniusError) as exc:
        _err(str(exc))
        return FALSE
    _emit(endo_to_json(b), args.out)
    return OK


def cmd_family(args) -> int:
    params = _parse_kv(args.param, "--param")
    if args.name == "random-idempotent":
        if params:
            raise UsageError("random-idempotent takes no parameters (use --seed and --rank)")
        T = random_idempotent(make_rng(args.seed), matrix_algebra(args.n), args.rank)
    else:
        try:
            T = family(args.name, args.n, params)
        except FamilyParameterError as exc:
            raise UsageError(str(exc)) from None
        except (ValueError, ZeroDivisionError) as exc:
            raise UsageError(f"bad parameter: {exc}") from None
    _emit(endo_to_json(T), args.out)
    return OK


def cmd_gb(args) -> int:
    ideal = load_ideal(args.ideal)
    if args.order:
        from .poly import Ideal
        ring = ideal.ring.with_order(args.order)
        ideal = Ideal(ring, [g.__class__(ring, g.terms) for g in ideal.generators])
    budget = Budget(args.max_pairs, _budget_seconds(args.budget_seconds))
    try:
        gb = groebner(ideal, budget)
    except ResourceLimitExceeded as exc:
        _err(f"resource limit: {exc.reason}")
        return RESOURCE
    out = basis_to_json(gb)
    out["dimension"] = ideal_dimension(gb)
    out["vector_space_dimension"] = vector_space_dimension(gb)
    if args.json:
        _emit(out, args.out)
    else:
        _say(f"reduced Groebner basis ({len(gb.basis)} elements, {gb.ring.order}):")
        for g in gb.basis:
            _say(f"  {g}")
        _say(f"dimension: {out['dimension']}")
        _say(f"vector space dimension: {out['vector_space_dimension']}")
    return OK


# -- parser ---------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="frobkit", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=f"frobkit {__version__}")
    p.add_argument("--seed", type=int, default=0,
                   help="seed for randomized inputs (default 0)")
    sub = p.add_subparsers(dest="command", required=True, metavar="COMMAND")

    c = sub.add_parser("check", help="test a predicate on an endomorphism file")
    c.add_argument("--endo", required=True, help="endomorphism JSON file")
    c.add_argument("--predicate", required=True,
                   choices=sorted(set(PREDICATES) | {x.replace("_", "-") for x in PREDICATES}))
    c.add_argument("--lambda", dest="lam", help="convolution scalar (default: inferred)")
    c.add_argument("--json", action="store_true")
    c.set_defaults(func=cmd_check)

    v = sub.add_parser("verify-claims", help="run the Groebner-certified claims")
    v.add_argument("--n", type=int, required=True)
    v.add_argument("--claim", action="append", default=None,
                   help=f"claim id ({', '.join(CLAIM_IDS)}) or all; repeatable")
    v.add_argument("--budget-seconds", type=float, default=None,
                   help="wall-clock budget per claim (default $FROBKIT_BUDGET_SECONDS or 600)")
    v.add_argument("--max-pairs", type=int, default=None, help="S-pair budget per Groebner basis")
    v.add_argument("--json", action="store_true")
    v.set_defaults(func=cmd_verify_claims)

    e = sub.add_parser("eval", help="evaluate diagram expressions on M_n")
    e.add_argument("--n", type=int, required=True)
    e.add_argument("--expr")
    e.add_argument("--assert-equal", metavar="EXPR")
    e.add_argument("--corpus", metavar="FILE", help="file of 'lhs == rhs' lines")
    e.add_argument("--bind", action="append", metavar="NAME=FILE")
    e.add_argument("--json", action="store_true")
    e.set_defaults(func=cmd_eval)

    s = sub.add_parser("split", help="split an idempotent and induce its Frobenius structure")
    s.add_argument("--endo", required=True)
    s.add_argument("--out", help="write the bundle here instead of stdout")
    s.set_defaults(func=cmd_split)

    b = sub.add_parser("embed", help="idempotent b = i i* of a unital subalgebra of M_n")
    b.add_argument("--span", required=True, help="JSON list of coordinate vectors")
    b.add_argument("--n", type=int, default=2)
    b.add_argument("--out")
    b.set_defaults(func=cmd_embed)

    f = sub.add_parser("family", help="write a named endomorphism of M_n")
    f.add_argument("--name", required=True, choices=list(FAMILIES) + ["random-idempotent"])
    f.add_argument("--n", type=int, default=2)
    f.add_argument("--param", action="append", metavar="NAME=VALUE")
    f.add_argument("--rank", type=int, default=None, help="rank for random-idempotent")
    f.add_argument("--out")
    f.set_defaults(func=cmd_family)

    g = sub.add_parser("gb", help="reduced Groebner basis and dimensions of an ideal file")
    g.add_argument("--ideal", required=True)
    g.add_argument("--order", choices=["degrevlex", "lex"])
    g.add_argument("--budget-seconds", type=float, default=None)
    g.add_argument("--max-pairs", type=int, default=None)
    g.add_argument("--json", action="store_true")
    g.add_argument("--out")
    g.set_defaults(func=cmd_gb)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return USAGE if exc.code else OK
    if getattr(args, "claim", "unset") is None:
        args.claim = ["all"]
    if getattr(args, "n", 1) is not None and getattr(args, "n", 1) < 1:
        _err("--n must be positive")
        return USAGE
    try:
        return args.func(args)
    except (UsageError, FormatError, DSLError, AlgebraMismatchError) as exc:
        _err(str(exc))
        return USAGE


if __name__ == "__main__":
    sys.exit(main())
