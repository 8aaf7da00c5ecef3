"""Probe M_3: instance checks, random idempotents, and budgeted Groebner runs.

The n = 3 systems have 82 variables; the Groebner claims are expected to hit
the budget on a laptop and are reported as such.
"""

import argparse
import json
import time
from dataclasses import asdict, dataclass

from frobkit.claims import ClaimSuite, family, family_lambda, make_eqs
from frobkit.corpus import make_rng, random_idempotent
from frobkit.frobenius import check_predicate, matrix_algebra
from frobkit.groebner import Budget, ResourceLimitExceeded, groebner
from frobkit.poly import Ideal


@dataclass
class ExploreConfig:
    seed: int = 0
    samples: int = 20
    budget_seconds: float = 60.0
    max_pairs: int | None = None


def instance_checks() -> dict:
    eqs = make_eqs(3)
    out = {}
    for name in ("identity", "diagonal", "trace"):
        values = eqs.substitute(family(name, 3), family_lambda(name, 3))
        out[name] = {k: all(v == 0 for v in vals) for k, vals in values.items()}
    return out


def random_idempotent_census(cfg: ExploreConfig) -> dict:
    """How often do random idempotents of M_3 satisfy each predicate?"""
    rng = make_rng(cfg.seed)
    alg = matrix_algebra(3)
    counts = {p: 0 for p in ("selfdual", "unital", "er", "biprojection")}
    for _ in range(cfg.samples):
        b = random_idempotent(rng, alg)
        for p in counts:
            counts[p] += check_predicate(b, p).holds
    return counts


def groebner_attempt(cfg: ExploreConfig) -> dict:
    eqs = make_eqs(3)
    gens = eqs.eqs1 + eqs.eqs2 + eqs.eqs3 + eqs.eqs4
    start = time.monotonic()
    try:
        gb = groebner(Ideal(eqs.ring, gens), Budget(cfg.max_pairs, cfg.budget_seconds))
    except ResourceLimitExceeded as exc:
        return {"status": "resource-limited", "reason": exc.reason, "stats": exc.stats}
    return {"status": "done", "basis_size": len(gb.basis),
            "seconds": round(time.monotonic() - start, 2)}


def main(argv=None):
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--samples", type=int, default=20)
    p.add_argument("--budget-seconds", type=float, default=60.0)
    p.add_argument("--max-pairs", type=int, default=None)
    p.add_argument("--claims", action="store_true", help="also run the claim suite at n = 3")
    args = p.parse_args(argv)
    cfg = ExploreConfig(args.seed, args.samples, args.budget_seconds, args.max_pairs)
    result = {
        "config": asdict(cfg),
        "instance_checks": instance_checks(),
        "random_idempotents": random_idempotent_census(cfg),
        "groebner_I": groebner_attempt(cfg),
    }
    if args.claims:
        suite = ClaimSuite(3, cfg.budget_seconds, cfg.max_pairs)
        result["claims"] = [r.to_dict() for r in suite.run_all()]
    print(json.dumps(result, indent=2))


if __name__ == "__main__":
    main()
