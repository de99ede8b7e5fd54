"""Kendall tau correlation matrices at scale and their limiting spectra."""

from .datagen import DataMatrix, Marginal, generate_samples, true_cdf
from .harness import ExperimentConfig, ExperimentResult, cli_main, run_diagnostics, run_experiment
from .hoeffding import (
    CdfMode,
    DecompositionReport,
    ScoreMatrix,
    compute_scores,
    decompose_pair,
    m1_sum,
    m2_m3_sums,
    replace_diagonal,
    residual_report,
)
from .metrics import (
    CdfFunction,
    EmpiricalCdf,
    LawCdf,
    check_levy_frobenius_bound,
    frobenius_distance_sq_normalized,
    ks_distance,
    levy_distance,
)
from .mplaw import LimitLaw, density_grid, mp_cdf, mp_density, support, wishart_esd_reference
from .rankcorr import (
    CorrelationMatrix,
    SignVector,
    kendall_tau_matrix,
    rescale_tau,
    set_thread_count,
    spearman_matrix,
    tau_matrix,
    tau_pair,
    tau_pair_bruteforce,
)
from .spectra import (
    ConvergenceError,
    SpectralDistribution,
    eigenvalues_symmetric,
    esd_cdf,
    histogram,
    symmetric_eigendecomposition,
)

__version__ = "0.1.0"
