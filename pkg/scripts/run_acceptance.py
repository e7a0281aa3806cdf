"""Run the acceptance criteria and print one line per criterion.

    python3 scripts/run_acceptance.py            # all
    python3 scripts/run_acceptance.py 5 7 12     # a subset
    python3 scripts/run_acceptance.py --json out.json
"""
import argparse
import json
import sys

from raagkit.acceptance import run_all


def main() -> int:
    p = argparse.ArgumentParser()
    p.add_argument("numbers", nargs="*", type=int)
    p.add_argument("--json", help="also write the results here")
    args = p.parse_args()
    results = run_all(args.numbers or None)
    for r in results:
        print(r.line, flush=True)
    if args.json:
        with open(args.json, "w") as fh:
            json.dump([r.to_json() for r in results], fh, indent=2)
    failed = sum(not r.passed for r in results)
    print(f"{len(results) - failed}/{len(results)} passed")
    return 1 if failed else 0


if __name__ == "__main__":
    sys.exit(main())
