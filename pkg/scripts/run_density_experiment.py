#!/usr/bin/env python3
"""Run the spectral-density experiment and print the report as JSON.

Samples one random (q+1)-regular graph per size, histograms its adjacency
spectrum, and compares against the limiting density.  Example:

    python3 scripts/run_density_experiment.py --q 2 --sizes 100,1000 --seeds 0,1,2,3,4
"""

import argparse
import json

from grover_zeta.cli import jsonable
from grover_zeta.experiments import density_experiment


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--q", type=int, default=2)
    parser.add_argument("--sizes", default="100,1000")
    parser.add_argument("--bins", type=float, default=0.25)
    parser.add_argument("--seeds", default="0", help="comma-separated list; one run per seed")
    args = parser.parse_args()

    sizes = [int(tok) for tok in args.sizes.split(",")]
    runs = []
    improved = 0
    for seed in (int(tok) for tok in args.seeds.split(",")):
        report = density_experiment(args.q, sizes, bin_width=args.bins, seed=seed)
        runs.append(jsonable(report))
        if len(report.l1_distance) >= 2 and report.l1_distance[-1] < report.l1_distance[0]:
            improved += 1
    print(json.dumps({"runs": runs, "improved_runs": improved}, indent=2))
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
