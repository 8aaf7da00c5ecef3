"""Run every claim for one n and write the JSON reports.

    python3 scripts/reproduce_claims.py --n 2 --out results/n2.json
"""

import argparse
import json
import sys
import time
from dataclasses import asdict, dataclass
from pathlib import Path

from frobkit.claims import CLAIM_IDS, PASS, ClaimSuite, default_budget_seconds, make_eqs


@dataclass
class RunConfig:
    n: int = 2
    budget_seconds: float = 600.0
    max_pairs: int | None = None
    claims: tuple = CLAIM_IDS


def run(cfg: RunConfig) -> dict:
    start = time.monotonic()
    eqs = make_eqs(cfg.n)
    sizes = {name: len(polys) for name, polys in eqs.systems().items()}
    suite = ClaimSuite(cfg.n, cfg.budget_seconds, cfg.max_pairs)
    reports = [suite.run(c).to_dict() for c in cfg.claims]
    bases = {key: {"size": len(gb.basis), "pairs": gb.stats["pairs"]}
             for key, gb in suite._bases.items()}
    return {
        "config": {**asdict(cfg), "claims": list(cfg.claims)},
        "system_sizes": sizes,
        "groebner_bases": bases,
        "reports": reports,
        "seconds": round(time.monotonic() - start, 2),
    }


def main(argv=None):
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--n", type=int, default=2)
    p.add_argument("--budget-seconds", type=float, default=None)
    p.add_argument("--max-pairs", type=int, default=None)
    p.add_argument("--claim", action="append", choices=CLAIM_IDS)
    p.add_argument("--out", type=Path)
    args = p.parse_args(argv)
    cfg = RunConfig(args.n, args.budget_seconds or default_budget_seconds(), args.max_pairs,
                    tuple(args.claim or CLAIM_IDS))
    result = run(cfg)
    for r in result["reports"]:
        print(f"{r['claim']:32s} {r['status']:17s} {r['seconds']:8.2f}s")
    print(f"total {result['seconds']}s")
    if args.out:
        args.out.parent.mkdir(parents=True, exist_ok=True)
        args.out.write_text(json.dumps(result, indent=2) + "\n")
    return 0 if all(r["status"] == PASS for r in result["reports"]) else 1


if __name__ == "__main__":
    sys.exit(main())
