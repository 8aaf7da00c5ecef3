"""JSON formats for endomorphisms, ideals and split bundles.

Rationals are always strings ``"p/q"`` (q > 0, lowest terms); polynomials are
lists of ``{"coeff": "p/q", "exps": [...]}`` terms in decreasing order.
Writers emit keys in a fixed order so output is byte-stable.
"""

from __future__ import annotations

import json
from fractions import Fraction
from pathlib import Path

import numpy as np

from .frobenius import Endo, matrix_algebra
from .groebner import GroebnerBasis
from .linalg import zeros
from .poly import ORDERS, Ideal, MPoly, Ring, format_rat, rat


class FormatError(ValueError):
    """Malformed input file; the message names the file and the offending location."""


def _fail(source: str, where: str, what: str):
    raise FormatError(f"{source}: {where}: {what}")


def load_json(path) -> object:
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise FormatError(f"{path}: cannot read: {exc.strerror}") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(f"{path}: invalid JSON at line {exc.lineno} column {exc.colno}: {exc.msg}") from None


def _is_leaf(obj) -> bool:
    if isinstance(obj, dict):
        return all(not isinstance(v, (dict, list)) or _is_flat(v) for v in obj.values())
    return _is_flat(obj)


def _is_flat(obj) -> bool:
    return isinstance(obj, list) and all(not isinstance(v, (dict, list)) for v in obj)


def _write(obj, indent: int) -> str:
    if not isinstance(obj, (dict, list)) or _is_leaf(obj) or (
            isinstance(obj, list) and all(isinstance(v, dict) and _is_leaf(v) for v in obj)
            and len(obj) <= 4):
        return json.dumps(obj)
    pad, inner = " " * indent, " " * (indent + 2)
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [f"{inner}{json.dumps(k)}: {_write(v, indent + 2)}" for k, v in obj.items()]
        return "{\n" + ",\n".join(items) + "\n" + pad + "}"
    if not obj:
        return "[]"
    items = [inner + _write(v, indent + 2) for v in obj]
    return "[\n" + ",\n".join(items) + "\n" + pad + "]"


def dumps(obj) -> str:
    """Indented JSON with flat lists and small polynomials kept on one line."""
    return _write(obj, 0) + "\n"


# -- scalars and polynomials ------------------------------------------------


def _parse_rat(value, source, where) -> Fraction:
    if isinstance(value, bool) or not isinstance(value, (str, int)):
        _fail(source, where, f"expected a rational string 'p/q', got {value!r}")
    try:
        return rat(value)
    except (ValueError, ZeroDivisionError):
        _fail(source, where, f"not a rational: {value!r}")


def poly_to_json(p: MPoly) -> list:
    return [{"coeff": format_rat(p.terms[m]), "exps": list(m)} for m in p.monomials()]


def poly_from_json(data, ring: Ring, source="<json>", where="polynomial") -> MPoly:
    if not isinstance(data, list):
        _fail(source, where, "expected a list of terms")
    terms: dict = {}
    for t, term in enumerate(data):
        loc = f"{where}[{t}]"
        if not isinstance(term, dict) or set(term) != {"coeff", "exps"}:
            _fail(source, loc, "expected a term {\"coeff\", \"exps\"}")
        exps = term["exps"]
        if (not isinstance(exps, list) or len(exps) != ring.nvars
                or any(isinstance(e, bool) or not isinstance(e, int) or e < 0 for e in exps)):
            _fail(source, loc, f"exps must be {ring.nvars} nonnegative integers")
        key = tuple(exps)
        terms[key] = terms.get(key, Fraction(0)) + _parse_rat(term["coeff"], source, loc + ".coeff")
    return MPoly(ring, terms)


def _ring_from_json(data: dict, source: str) -> Ring:
    names = data.get("variables")
    if not isinstance(names, list) or not all(isinstance(v, str) for v in names):
        _fail(source, "variables", "expected a list of names")
    order = data.get("order", "degrevlex")
    if order not in ORDERS:
        _fail(source, "order", f"expected one of {', '.join(ORDERS)}")
    try:
        return Ring(names, order)
    except ValueError as exc:
        _fail(source, "variables", str(exc))


# -- endomorphism files ----------------------------------------------------


def endo_to_json(T: Endo) -> dict:
    alg = T.algebra
    if not alg.is_matrix_model:
        raise ValueError("only the matrix model has a file format")
    A = T.A
    n = alg.n
    symbolic = T.is_symbolic()
    ring = None
    if symbolic:
        ring = next(v.ring for v in A.reshape(-1) if isinstance(v, MPoly))

    def entry(v):
        if not symbolic:
            return format_rat(v)
        return poly_to_json(v if isinstance(v, MPoly) else ring.const(v))

    nested = [[[[entry(A[i, j, k, l]) for l in range(n)] for k in range(n)]
               for j in range(n)] for i in range(n)]
    out = {"model": "matrix", "n": n, "scalars": "poly" if symbolic else "rational"}
    if symbolic:
        out["variables"] = list(ring.names)
        out["order"] = ring.order
    out["A"] = nested
    return out


def endo_from_json(data, source="<json>") -> Endo:
    if not isinstance(data, dict):
        _fail(source, "top level", "expected an object")
    if data.get("model") != "matrix":
        _fail(source, "model", "only \"matrix\" is supported")
    n = data.get("n")
    if isinstance(n, bool) or not isinstance(n, int) or n < 1:
        _fail(source, "n", "expected a positive integer")
    scalars = data.get("scalars", "rational")
    if scalars not in ("rational", "poly"):
        _fail(source, "scalars", "expected \"rational\" or \"poly\"")
    ring = _ring_from_json(data, source) if scalars == "poly" else None
    A = zeros((n,) * 4)
    raw = data.get("A")
    for i in range(n):
        for j in range(n):
            for k in range(n):
                for l in range(n):
                    where = f"A[{i}][{j}][{k}][{l}]"
                    try:
                        v = raw[i][j][k][l]
                    except (TypeError, IndexError, KeyError):
                        _fail(source, where, f"A must be a {n}x{n}x{n}x{n} nested array")
                    if ring is None:
                        A[i, j, k, l] = _parse_rat(v, source, where)
                    else:
                        p = poly_from_json(v, ring, source, where)
                        A[i, j, k, l] = p.constant_coeff() if p.is_constant() else p
    if not _exact_shape(raw, n, 4):
        _fail(source, "A", f"A must be a {n}x{n}x{n}x{n} nested array")
    return Endo.from_coefficients(matrix_algebra(n), A)


def _exact_shape(raw, n, depth) -> bool:
    if depth == 0:
        return True
    return isinstance(raw, list) and len(raw) == n and all(_exact_shape(r, n, depth - 1) for r in raw)


def load_endo(path) -> Endo:
    return endo_from_json(load_json(path), str(path))


# -- ideal files -------------------------------------------------------------


def ideal_to_json(ideal: Ideal) -> dict:
    ring = ideal.ring
    return {"variables": list(ring.names), "order": ring.order,
            "generators": [poly_to_json(g) for g in ideal.generators]}


def ideal_from_json(data, source="<json>") -> Ideal:
    if not isinstance(data, dict):
        _fail(source, "top level", "expected an object")
    ring = _ring_from_json(data, source)
    gens = data.get("generators")
    if not isinstance(gens, list):
        _fail(source, "generators", "expected a list of polynomials")
    return Ideal(ring, [poly_from_json(g, ring, source, f"generators[{i}]")
                        for i, g in enumerate(gens)])


def load_ideal(path) -> Ideal:
    return ideal_from_json(load_json(path), str(path))


def basis_to_json(gb: GroebnerBasis) -> dict:
    ring = gb.ring
    return {"variables": list(ring.names), "order": ring.order,
            "basis": [poly_to_json(g) for g in gb.basis]}


# -- arrays -------------------------------------------------------------------


def array_to_json(arr):
    if isinstance(arr, np.ndarray):
        if arr.ndim == 0:
            return array_to_json(arr.item())
        return [array_to_json(a) for a in arr]
    return poly_to_json(arr) if isinstance(arr, MPoly) else format_rat(arr)


def array_from_json(data, shape=None) -> np.ndarray:
    arr = np.array(data, dtype=object)
    out = np.empty(arr.shape, dtype=object)
    for idx, v in np.ndenumerate(arr):
        out[idx] = rat(v)
    return out.reshape(shape) if shape is not None else out


def split_bundle(split, induced, report) -> dict:
    """The JSON bundle written by ``frobkit split``."""
    return {
        "rank": split.rank,
        "u": array_to_json(split.u),
        "v": array_to_json(split.v),
        "structure_constants": array_to_json(induced.structure_constants),
        "unit": array_to_json(induced.unit),
        "counit": array_to_json(induced.counit),
        "comultiplication": array_to_json(induced.comul_tensor),
        "frobenius_axioms": induced.failure is None,
        "axiom_failure": None if induced.failure is None else str(induced.failure),
        "embedding": {name: report.checks[name] for name in report.checks},
    }
