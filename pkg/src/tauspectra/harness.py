"""Seeded end-to-end experiments and the command-line interface.

A run generates data, computes the tau matrix, extracts its spectrum and
measures KS/Levy distances to the configured limit law at the finite
aspect ratio p/n, then persists eigenvalues, a histogram, the limit
density curve, and a JSON summary. Everything is deterministic in the
config: replicate seeds follow a fixed splitting rule and the pair loop
partitions work identically for any thread count.
"""

from __future__ import annotations

import argparse
import json
import os
import statistics
import sys
import time
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .datagen import Marginal, generate_samples
from .hoeffding import DecompositionReport, residual_report
from .metrics import EmpiricalCdf, LawCdf, ks_distance, levy_distance
from .mplaw import LimitLaw, density_grid, mp_cdf, support
from .rankcorr import kendall_tau_matrix, rescale_tau, set_thread_count, tau_matrix
from .spectra import SpectralDistribution, eigenvalues_symmetric, histogram

__all__ = [
    "ExperimentConfig",
    "ExperimentResult",
    "run_experiment",
    "run_diagnostics",
    "cli_main",
    "main",
]

OUTPUT_DIR_ENV = "TAUSPECTRA_OUT"
_LAW_CHOICES = ("kendall_affine", "standard_mp", "auto")
_DIAGNOSTICS_MAX_N = 2000

_MARGINAL_NAMES = {
    "uniform": Marginal.UNIFORM01,
    "uniform01": Marginal.UNIFORM01,
    "gaussian": Marginal.STANDARD_GAUSSIAN,
    "normal": Marginal.STANDARD_GAUSSIAN,
    "cauchy": Marginal.STANDARD_CAUCHY,
    "exponential": Marginal.EXPONENTIAL1,
    "exponential1": Marginal.EXPONENTIAL1,
}


def parse_marginal(name: str) -> Marginal:
    key = name.strip().lower()
    if key not in _MARGINAL_NAMES:
        known = ", ".join(sorted(set(_MARGINAL_NAMES)))
        raise ValueError(f"unknown marginal {name!r}; expected one of: {known}")
    return _MARGINAL_NAMES[key]


def default_output_dir() -> Path:
    return Path(os.environ.get(OUTPUT_DIR_ENV, "tauspectra_out"))


@dataclass(frozen=True)
class ExperimentConfig:
    """Complete description of a reproducible spectrum experiment."""

    n: int
    p: int
    marginal: Marginal = Marginal.UNIFORM01
    seed: int = 0
    replicates: int = 1
    bins: int = 50
    law: str = "auto"
    outputs: Path = field(default_factory=default_output_dir)

    def __post_init__(self) -> None:
        if self.n < 2:
            raise ValueError(f"need n >= 2, got {self.n}")
        if self.p < 1:
            raise ValueError(f"need p >= 1, got {self.p}")
        if self.replicates < 1:
            raise ValueError(f"need replicates >= 1, got {self.replicates}")
        if self.bins < 1:
            raise ValueError(f"need bins >= 1, got {self.bins}")
        if self.law not in _LAW_CHOICES:
            raise ValueError(f"law must be one of {_LAW_CHOICES}, got {self.law!r}")
        if not isinstance(self.marginal, Marginal):
            raise ValueError(f"unknown marginal: {self.marginal!r}")
        object.__setattr__(self, "outputs", Path(self.outputs))

    @property
    def gamma_hat(self) -> float:
        return self.p / self.n

    def resolved_law(self) -> str:
        """auto means: analyze the raw tau matrix against its affine limit."""
        return "kendall_affine" if self.law == "auto" else self.law

    def as_dict(self) -> dict:
        return {
            "n": self.n,
            "p": self.p,
            "marginal": self.marginal.value,
            "seed": self.seed,
            "replicates": self.replicates,
            "bins": self.bins,
            "law": self.law,
            "outputs": str(self.outputs),
        }


@dataclass(frozen=True)
class ExperimentResult:
    """Where a run's artifacts live, plus its headline distances."""

    config: ExperimentConfig
    eigenvalues_path: Path
    replicate_paths: tuple[Path, ...]
    histogram_path: Path
    density_path: Path
    summary_path: Path
    ks_to_limit: float
    levy_to_limit: float
    ks_values: tuple[float, ...]
    levy_values: tuple[float, ...]
    wall_time_seconds: float
    decomposition: DecompositionReport | None = None


def _replicate_seed(master: int, index: int) -> int:
    """Replicate 0 reuses the master seed; later ones are split from it."""
    if index == 0:
        return master
    sequence = np.random.SeedSequence(master & 0xFFFFFFFFFFFFFFFF, spawn_key=(index,))
    return int(sequence.generate_state(1, np.uint64)[0])


def _limit_law(name: str, gamma: float) -> LimitLaw:
    if name == "kendall_affine":
        return LimitLaw.kendall_affine(gamma)
    if name == "standard_mp":
        return LimitLaw.standard_mp(gamma)
    raise ValueError(f"unknown law name: {name!r}")


def write_eigenvalues_csv(path: Path, dist: SpectralDistribution) -> None:
    lines = ["eigenvalue"]
    lines.extend(f"{value:.17g}" for value in dist.eigenvalues)
    path.write_text("\n".join(lines) + "\n")


def read_eigenvalues_csv(path: Path) -> np.ndarray:
    try:
        raw = Path(path).read_text()
    except OSError as exc:
        raise ValueError(f"cannot read eigenvalue CSV {path}: {exc}") from exc
    lines = [line.strip() for line in raw.splitlines() if line.strip()]
    if lines and lines[0] == "eigenvalue":
        lines = lines[1:]
    if not lines:
        raise ValueError(f"eigenvalue CSV {path} holds no values")
    try:
        return np.array([float(line) for line in lines])
    except ValueError as exc:
        raise ValueError(f"malformed eigenvalue CSV {path}: {exc}") from exc


def read_matrix_csv(path: Path) -> np.ndarray:
    try:
        matrix = np.loadtxt(path, delimiter=",", ndmin=2, dtype=np.float64)
    except OSError as exc:
        raise ValueError(f"cannot read matrix CSV {path}: {exc}") from exc
    except Exception as exc:
        raise ValueError(f"malformed matrix CSV {path}: {exc}") from exc
    return matrix


def write_matrix_csv(path: Path, matrix: np.ndarray) -> None:
    np.savetxt(path, matrix, fmt="%.17g", delimiter=",")


def _write_pairs_csv(path: Path, header: str, rows) -> None:
    lines = [header]
    lines.extend(f"{x:.17g},{y:.17g}" for x, y in rows)
    path.write_text("\n".join(lines) + "\n")


def run_experiment(config: ExperimentConfig) -> ExperimentResult:
    """Run all replicates of a spectrum experiment and persist the outputs."""
    start = time.perf_counter()
    out_dir = config.outputs
    out_dir.mkdir(parents=True, exist_ok=True)
    law_name = config.resolved_law()
    law = _limit_law(law_name, config.gamma_hat)
    law_cdf = LawCdf(law)

    replicate_paths: list[Path] = []
    replicate_rows: list[dict] = []
    ks_values: list[float] = []
    levy_values: list[float] = []
    pooled: list[np.ndarray] = []

    for index in range(config.replicates):
        seed = _replicate_seed(config.seed, index)
        data = generate_samples(config.n, config.p, config.marginal, seed)
        tau = tau_matrix(data)
        if law_name == "standard_mp":
            matrix = rescale_tau(tau)
        else:
            matrix = tau.entries
        dist = eigenvalues_symmetric(matrix)
        ks = ks_distance(EmpiricalCdf(dist), law_cdf)
        levy = levy_distance(EmpiricalCdf(dist), law_cdf)
        name = "eigenvalues.csv" if index == 0 else f"eigenvalues_rep{index}.csv"
        path = out_dir / name
        write_eigenvalues_csv(path, dist)
        replicate_paths.append(path)
        ks_values.append(ks)
        levy_values.append(levy)
        pooled.append(dist.eigenvalues)
        replicate_rows.append(
            {"index": index, "seed": seed, "ks": ks, "levy": levy, "eigenvalues_csv": name}
        )

    pooled_values = np.concatenate(pooled)
    lo = float(pooled_values.min())
    hi = float(pooled_values.max())
    if lo == hi:
        lo, hi = lo - 0.5, hi + 0.5
    pooled_dist = SpectralDistribution.from_values(pooled_values)
    bars = histogram(pooled_dist, config.bins, (lo, hi))
    histogram_path = out_dir / "histogram.csv"
    _write_pairs_csv(histogram_path, "bin_center,density", bars)

    grid_x, grid_density = density_grid(law, points=513)
    density_path = out_dir / "density.csv"
    _write_pairs_csv(density_path, "x,density", zip(grid_x, grid_density))

    ks_median = float(statistics.median(ks_values))
    levy_median = float(statistics.median(levy_values))
    wall = time.perf_counter() - start
    summary = {
        "config": config.as_dict(),
        "gamma_hat": config.gamma_hat,
        "law_used": {
            "name": law_name,
            "gamma": law.gamma,
            "scale": law.scale,
            "shift": law.shift,
        },
        "replicates": replicate_rows,
        "ks_to_limit": ks_median,
        "levy_to_limit": levy_median,
        "files": {
            "eigenvalues": [p.name for p in replicate_paths],
            "histogram": histogram_path.name,
            "density": density_path.name,
        },
        "wall_time_seconds": wall,
    }
    summary_path = out_dir / "summary.json"
    summary_path.write_text(json.dumps(summary, indent=2, sort_keys=True) + "\n")

    return ExperimentResult(
        config=config,
        eigenvalues_path=replicate_paths[0],
        replicate_paths=tuple(replicate_paths),
        histogram_path=histogram_path,
        density_path=density_path,
        summary_path=summary_path,
        ks_to_limit=ks_median,
        levy_to_limit=levy_median,
        ks_values=tuple(ks_values),
        levy_values=tuple(levy_values),
        wall_time_seconds=wall,
    )


def run_diagnostics(config: ExperimentConfig) -> DecompositionReport:
    """Residual statistics of the pair-average split, persisted as JSON."""
    if config.n > _DIAGNOSTICS_MAX_N:
        raise ValueError(
            f"diagnostics are quadratic in n; n={config.n} exceeds the "
            f"{_DIAGNOSTICS_MAX_N} guard"
        )
    data = generate_samples(config.n, config.p, config.marginal, config.seed)
    report = residual_report(data)
    config.outputs.mkdir(parents=True, exist_ok=True)
    path = config.outputs / "diagnostics.json"
    path.write_text(json.dumps(report.as_dict(), indent=2, sort_keys=True) + "\n")
    return report


def _config_from_sources(args: argparse.Namespace) -> ExperimentConfig:
    """Merge config-file values with explicit flags; flags win."""
    values: dict = {}
    if args.config is not None:
        try:
            raw = Path(args.config).read_text()
        except OSError as exc:
            raise ValueError(f"cannot read config file {args.config}: {exc}") from exc
        try:
            loaded = json.loads(raw)
        except json.JSONDecodeError as exc:
            raise ValueError(f"config file {args.config} is not valid JSON: {exc}") from exc
        if not isinstance(loaded, dict):
            raise ValueError(f"config file {args.config} must hold a JSON object")
        known = {"n", "p", "marginal", "seed", "replicates", "bins", "law", "out"}
        unknown = set(loaded) - known
        if unknown:
            raise ValueError(f"unknown config keys: {sorted(unknown)}")
        values.update(loaded)

    for key in ("n", "p", "seed", "replicates", "bins", "law", "marginal", "out"):
        flag = getattr(args, key, None)
        if flag is not None:
            values[key] = flag

    if "n" not in values or "p" not in values:
        raise ValueError("n and p are required (flags or config file)")
    marginal = values.get("marginal", "uniform")
    if isinstance(marginal, str):
        marginal = parse_marginal(marginal)
    outputs = Path(values["out"]) if "out" in values else default_output_dir()
    try:
        return ExperimentConfig(
            n=int(values["n"]),
            p=int(values["p"]),
            marginal=marginal,
            seed=int(values.get("seed", 0)),
            replicates=int(values.get("replicates", 1)),
            bins=int(values.get("bins", 50)),
            law=str(values.get("law", "auto")),
            outputs=outputs,
        )
    except TypeError as exc:
        raise ValueError(f"invalid config value: {exc}") from exc


def _cmd_simulate(args: argparse.Namespace) -> int:
    config = _config_from_sources(args)
    if args.threads is not None:
        set_thread_count(args.threads)
    result = run_experiment(config)
    print(
        json.dumps(
            {
                "out": str(config.outputs),
                "gamma_hat": config.gamma_hat,
                "ks_to_limit": result.ks_to_limit,
                "levy_to_limit": result.levy_to_limit,
                "wall_time_seconds": result.wall_time_seconds,
            }
        )
    )
    return 0


def _cmd_diagnose(args: argparse.Namespace) -> int:
    config = _config_from_sources(args)
    report = run_diagnostics(config)
    print(json.dumps(report.as_dict()))
    return 0


def _cmd_tau(args: argparse.Namespace) -> int:
    values = read_matrix_csv(args.data)
    tau = kendall_tau_matrix(values)
    out = Path(args.out)
    out.parent.mkdir(parents=True, exist_ok=True)
    write_matrix_csv(out, tau)
    return 0


def _cmd_spectrum(args: argparse.Namespace) -> int:
    matrix = read_matrix_csv(args.matrix)
    dist = eigenvalues_symmetric(matrix)
    out = Path(args.out)
    out.parent.mkdir(parents=True, exist_ok=True)
    write_eigenvalues_csv(out, dist)
    return 0


def _cmd_law(args: argparse.Namespace) -> int:
    law = _limit_law(args.law, args.gamma)
    out = Path(args.out)
    out.parent.mkdir(parents=True, exist_ok=True)
    if args.what == "density":
        x, values = density_grid(law, points=args.points)
        _write_pairs_csv(out, "x,density", zip(x, values))
    else:
        lo, hi = support(law)
        lo = min(lo, law.shift)
        span = hi - lo
        x = np.linspace(lo - 0.05 * span, hi + 0.05 * span, args.points)
        values = np.asarray(mp_cdf(law, x))
        _write_pairs_csv(out, "x,cdf", zip(x, values))
    return 0


def _cmd_compare(args: argparse.Namespace) -> int:
    first = EmpiricalCdf(read_eigenvalues_csv(args.esd))
    if args.esd2 is not None:
        second: EmpiricalCdf | LawCdf = EmpiricalCdf(read_eigenvalues_csv(args.esd2))
    elif args.law is not None:
        if args.gamma is None:
            raise ValueError("--gamma is required when comparing against a law")
        second = LawCdf(_limit_law(args.law, args.gamma))
    else:
        raise ValueError("compare needs either --esd2 or --law")
    print(
        json.dumps(
            {
                "ks": ks_distance(first, second),
                "levy": levy_distance(first, second),
            }
        )
    )
    return 0


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="tauspectra",
        description=(
            "Kendall tau spectra: simulate rank-correlation matrices and "
            "compare their spectra against the Marchenko-Pastur limit."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    simulate = sub.add_parser("simulate", help="run a seeded spectrum experiment")
    simulate.add_argument("--n", type=int, default=None, help="observations per replicate")
    simulate.add_argument("--p", type=int, default=None, help="coordinates (matrix dimension)")
    simulate.add_argument("--marginal", type=str, default=None)
    simulate.add_argument("--seed", type=int, default=None)
    simulate.add_argument("--replicates", type=int, default=None)
    simulate.add_argument("--bins", type=int, default=None)
    simulate.add_argument("--law", type=str, default=None, choices=_LAW_CHOICES)
    simulate.add_argument("--out", type=str, default=None, help="output directory")
    simulate.add_argument("--config", type=str, default=None, help="JSON config file")
    simulate.add_argument("--threads", type=int, default=None)
    simulate.set_defaults(func=_cmd_simulate)

    diagnose = sub.add_parser("diagnose", help="decomposition residual statistics")
    diagnose.add_argument("--n", type=int, default=None)
    diagnose.add_argument("--p", type=int, default=None)
    diagnose.add_argument("--marginal", type=str, default=None)
    diagnose.add_argument("--seed", type=int, default=None)
    diagnose.add_argument("--out", type=str, default=None)
    diagnose.add_argument("--config", type=str, default=None)
    diagnose.set_defaults(func=_cmd_diagnose, replicates=None, bins=None, law=None, threads=None)

    tau = sub.add_parser("tau", help="tau matrix of a CSV data matrix")
    tau.add_argument("--data", type=str, required=True, help="input CSV, rows = observations")
    tau.add_argument("--out", type=str, required=True, help="output CSV path")
    tau.set_defaults(func=_cmd_tau)

    spectrum = sub.add_parser("spectrum", help="eigenvalues of a symmetric CSV matrix")
    spectrum.add_argument("--matrix", type=str, required=True)
    spectrum.add_argument("--out", type=str, required=True)
    spectrum.set_defaults(func=_cmd_spectrum)

    law = sub.add_parser("law", help="tabulate a limit law's density or CDF")
    law.add_argument("--law", type=str, default="kendall_affine",
                     choices=("kendall_affine", "standard_mp"))
    law.add_argument("--gamma", type=float, required=True)
    law.add_argument("--what", type=str, default="density", choices=("density", "cdf"))
    law.add_argument("--points", type=int, default=512)
    law.add_argument("--out", type=str, required=True)
    law.set_defaults(func=_cmd_law)

    compare = sub.add_parser("compare", help="KS/Levy between spectra or against a law")
    compare.add_argument("--esd", type=str, required=True, help="eigenvalue CSV")
    compare.add_argument("--esd2", type=str, default=None, help="second eigenvalue CSV")
    compare.add_argument("--law", type=str, default=None,
                         choices=("kendall_affine", "standard_mp"))
    compare.add_argument("--gamma", type=float, default=None)
    compare.set_defaults(func=_cmd_compare)

    return parser


def cli_main(argv: list[str] | None = None) -> int:
    """Entry point returning 0 on success, 1 on bad input, 2 on runtime failure."""
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code == 0 else 1
    try:
        return args.func(args)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except Exception as exc:  # numeric failures, I/O on write, convergence
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2


def main() -> None:
    sys.exit(cli_main())


if __name__ == "__main__":
    main()
