"""Run the acceptance criteria and write a JSON report next to the console
summary."""
import argparse
import json
import sys

from mcmodels.acceptance import CHECKS, run_check
from mcmodels.cli import jsonable


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--only", default=None, help="comma-separated criterion numbers")
    ap.add_argument("--out", default="acceptance_report.json")
    args = ap.parse_args()
    numbers = [int(x) for x in args.only.split(",")] if args.only else sorted(CHECKS)
    results = []
    for n in numbers:
        r = run_check(n)
        print(r.line(), flush=True)
        results.append(r)
    with open(args.out, "w") as f:
        json.dump(jsonable([r.to_json() for r in results]), f, indent=2, sort_keys=True)
    sys.exit(0 if all(r.ok for r in results) else 1)


if __name__ == "__main__":
    main()
