#!/usr/bin/env python3
"""Measure how the pair-average residuals shrink with the sample size.

For each n on a doubling grid the script prints the three residual
statistics of the score split. The diagonal term should fall like 1/n
and the cross and tau-gap terms like p/n^2, so each doubling of n should
roughly halve the first column and quarter the last two.
"""

import argparse
import csv
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from tauspectra.datagen import generate_samples
from tauspectra.harness import parse_marginal
from tauspectra.hoeffding import residual_report


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--p", type=int, default=100)
    parser.add_argument("--n-grid", type=int, nargs="+",
                        default=[200, 400, 800, 1600])
    parser.add_argument("--marginal", default="uniform")
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--csv", default=None, help="also write rows to this CSV")
    args = parser.parse_args()

    marginal = parse_marginal(args.marginal)
    rows = []
    header = ("n", "p", "m1_residual_diag", "m1_residual_cross", "tau_vs_m1")
    print(("{:>6} {:>6}" + " {:>18}" * 3).format(*header))
    for n in args.n_grid:
        data = generate_samples(n, args.p, marginal, args.seed)
        report = residual_report(data)
        row = (n, args.p, report.m1_residual_diag,
               report.m1_residual_cross, report.tau_vs_m1)
        rows.append(row)
        print(f"{n:>6} {args.p:>6} {row[2]:>18.6e} {row[3]:>18.6e} {row[4]:>18.6e}")

    for (n0, _, _, _, t0), (n1, _, _, _, t1) in zip(rows, rows[1:]):
        print(f"tau_vs_m1 ratio n={n0} vs n={n1}: {t0 / t1:.3f} (theory {((n1 / n0) ** 2):.0f})")

    if args.csv:
        with open(args.csv, "w", newline="") as handle:
            writer = csv.writer(handle)
            writer.writerow(header)
            writer.writerows(rows)
        print(f"wrote {args.csv}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
