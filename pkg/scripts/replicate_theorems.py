"""Run every theorem scope at a given size bound and write one JSON report.

    python3 scripts/replicate_theorems.py --max-n 48 --out results/theorems.json

Set PST_LAB_THREADS to spread instance checks over processes.
"""

import argparse
import json
import sys
import time
from pathlib import Path

from pst_lab.theorems import SCOPES, verify_theorem_suite


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--max-n", type=int, default=40)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--scopes", nargs="*", default=list(SCOPES), choices=SCOPES)
    ap.add_argument("--out", type=Path, default=None)
    args = ap.parse_args()

    reports, ok = [], True
    for scope in args.scopes:
        t0 = time.perf_counter()
        rep = verify_theorem_suite(scope, args.max_n, seed=args.seed)
        ok &= rep.passed
        print(f"{scope:8s} {len(rep.results):5d} instances  {len(rep.failures):3d} failed  {time.perf_counter() - t0:6.1f}s")
        reports.append(rep.to_json())
    if args.out:
        args.out.parent.mkdir(parents=True, exist_ok=True)
        args.out.write_text(json.dumps({"max_n": args.max_n, "seed": args.seed, "reports": reports}, indent=2, sort_keys=True))
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main())
