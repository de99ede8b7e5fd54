#!/usr/bin/env python3
"""Track the spectrum's distance to its limit law as n grows at fixed p.

For each n the script runs several seeds and reports the median KS and
Levy distances between the tau ESD and the affine MP law at gamma = p/n.
The distances flatten once the finite-p resolution of a p-point spectrum
dominates, so the decreasing trend is clearest while n is small.
"""

import argparse
import statistics
import sys
import tempfile
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from tauspectra.harness import ExperimentConfig, parse_marginal, run_experiment


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--p", type=int, default=100)
    parser.add_argument("--n-grid", type=int, nargs="+",
                        default=[120, 240, 480, 960])
    parser.add_argument("--seeds", type=int, default=10)
    parser.add_argument("--marginal", default="uniform")
    args = parser.parse_args()

    marginal = parse_marginal(args.marginal)
    print(f"{'n':>6} {'gamma_hat':>10} {'ks_median':>12} {'levy_median':>12}")
    with tempfile.TemporaryDirectory() as scratch:
        for n in args.n_grid:
            ks_values, levy_values = [], []
            for seed in range(args.seeds):
                config = ExperimentConfig(
                    n=n, p=args.p, marginal=marginal, seed=seed, bins=10,
                    outputs=Path(scratch) / f"n{n}_s{seed}",
                )
                result = run_experiment(config)
                ks_values.append(result.ks_to_limit)
                levy_values.append(result.levy_to_limit)
            print(f"{n:>6} {args.p / n:>10.4f} "
                  f"{statistics.median(ks_values):>12.6f} "
                  f"{statistics.median(levy_values):>12.6f}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
