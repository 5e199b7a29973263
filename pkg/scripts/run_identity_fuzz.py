#!/usr/bin/env python3
"""Fuzz the whole identity suite on random mixed graphs.

Exit status is nonzero if any check failed.  Example:

    python3 scripts/run_identity_fuzz.py --count 200 --seed 0
"""

import argparse
import json

from grover_zeta.cli import jsonable
from grover_zeta.experiments import ALL_CHECKS, fuzz_identities


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--count", type=int, default=50)
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--checks", default=None,
                        help=f"comma-separated subset of {','.join(ALL_CHECKS)}")
    args = parser.parse_args()

    checks = tuple(args.checks.split(",")) if args.checks else ALL_CHECKS
    summary = fuzz_identities(args.count, seed=args.seed, checks=checks)
    payload = jsonable(summary)
    payload["ok"] = summary.ok
    print(json.dumps(payload, indent=2))
    return 0 if summary.ok else 1


if __name__ == "__main__":
    raise SystemExit(main())
