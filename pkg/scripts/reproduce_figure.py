#!/usr/bin/env python3
"""Reproduce the headline spectrum figure data.

Runs the flagship experiment (n=2000, p=1000, one seed) for a chosen
marginal and writes eigenvalues, histogram, and limit-density CSVs ready
for plotting. --quick switches to the n=600, p=300 variant that finishes
in seconds.
"""

import argparse
import json
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from tauspectra.harness import ExperimentConfig, parse_marginal, run_experiment


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--marginal", default="uniform",
                        help="uniform, gaussian, cauchy, or exponential")
    parser.add_argument("--seed", type=int, default=42)
    parser.add_argument("--quick", action="store_true",
                        help="use the small n=600, p=300 configuration")
    parser.add_argument("--law", default="auto", choices=("auto", "kendall_affine", "standard_mp"))
    parser.add_argument("--bins", type=int, default=50)
    parser.add_argument("--out", default=None, help="output directory")
    args = parser.parse_args()

    n, p = (600, 300) if args.quick else (2000, 1000)
    out = Path(args.out) if args.out else Path(f"figure_run_{n}x{p}_{args.marginal}")
    config = ExperimentConfig(
        n=n,
        p=p,
        marginal=parse_marginal(args.marginal),
        seed=args.seed,
        bins=args.bins,
        law=args.law,
        outputs=out,
    )
    result = run_experiment(config)
    print(json.dumps({
        "out": str(out),
        "n": n,
        "p": p,
        "marginal": args.marginal,
        "ks_to_limit": result.ks_to_limit,
        "levy_to_limit": result.levy_to_limit,
        "wall_time_seconds": round(result.wall_time_seconds, 2),
        "files": {
            "eigenvalues": result.eigenvalues_path.name,
            "histogram": result.histogram_path.name,
            "density": result.density_path.name,
        },
    }, indent=2))
    return 0


if __name__ == "__main__":
    sys.exit(main())
