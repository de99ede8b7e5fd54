"""Kendall tau and Spearman rho rank-correlation matrices.

tau_pair counts concordant/discordant pairs as exact integers with a
merge-sort inversion count, O(n log n) per column pair; the full matrix
parallelizes over the p(p-1)/2 column pairs. A quadratic brute-force
twin (tau_pair_bruteforce) serves as the oracle in tests.

Zero differences count as concordant: sign(0) = +1, applied with the
lower row index first. The fast path realizes this convention without
branching by ordering each column under the strict key (value, -row);
for tied values the lower row compares strictly larger in both columns,
so the pair contributes +1, exactly as the convention demands.
"""

from __future__ import annotations

from dataclasses import dataclass

import numba
import numpy as np

from .datagen import DataMatrix

__all__ = [
    "CorrelationMatrix",
    "SignVector",
    "sign_with_positive_zero",
    "tau_pair",
    "tau_pair_bruteforce",
    "pair_counts",
    "pair_counts_bruteforce",
    "kendall_tau_matrix",
    "tau_matrix",
    "rescale_tau",
    "spearman_matrix",
    "set_thread_count",
]


@dataclass(frozen=True)
class CorrelationMatrix:
    """A p-by-p rank-correlation matrix (tau or rho)."""

    p: int
    entries: np.ndarray

    def __post_init__(self) -> None:
        if self.entries.shape != (self.p, self.p):
            raise ValueError(
                f"entries shape {self.entries.shape} does not match p={self.p}"
            )
        if not np.array_equal(self.entries, self.entries.T):
            raise ValueError("correlation matrix must be exactly symmetric")
        if not np.all(self.entries.diagonal() == 1.0):
            raise ValueError("correlation matrix must have unit diagonal")
        if self.entries.min() < -1.0 or self.entries.max() > 1.0:
            raise ValueError("correlation entries must lie in [-1, 1]")
        self.entries.setflags(write=False)


@dataclass(frozen=True)
class SignVector:
    """Entrywise signs of a coordinate difference, each exactly +1 or -1."""

    values: np.ndarray

    def __post_init__(self) -> None:
        if not np.all(np.abs(self.values) == 1.0):
            raise ValueError("sign vector entries must be exactly +1 or -1")
        self.values.setflags(write=False)


def sign_with_positive_zero(x: np.ndarray) -> np.ndarray:
    """Entrywise sign with sign(0) = +1."""
    x = np.asarray(x, dtype=np.float64)
    return np.where(x >= 0.0, 1.0, -1.0)


@numba.njit(cache=True)
def _merge_count(seq, work):
    """Count inversions of seq in place (seq ends up sorted)."""
    n = seq.shape[0]
    inversions = 0
    width = 1
    while width < n:
        lo = 0
        while lo < n - width:
            mid = lo + width
            hi = min(lo + 2 * width, n)
            i = lo
            j = mid
            k = lo
            while i < mid and j < hi:
                if seq[i] <= seq[j]:
                    work[k] = seq[i]
                    i += 1
                else:
                    work[k] = seq[j]
                    inversions += mid - i
                    j += 1
                k += 1
            while i < mid:
                work[k] = seq[i]
                i += 1
                k += 1
            while j < hi:
                work[k] = seq[j]
                j += 1
                k += 1
            for t in range(lo, hi):
                seq[t] = work[t]
            lo += 2 * width
        width *= 2
    return inversions


@numba.njit(cache=True, parallel=True)
def _discordant_counts(orders, ranks, first, second, out):
    """Discordant-pair counts for each requested column pair.

    Each cell is written by exactly one loop iteration, so the result is
    identical for any thread count.
    """
    n = orders.shape[1]
    for t in numba.prange(first.shape[0]):
        seq = np.empty(n, dtype=np.int64)
        work = np.empty(n, dtype=np.int64)
        order_first = orders[first[t]]
        rank_second = ranks[second[t]]
        for i in range(n):
            seq[i] = rank_second[order_first[i]]
        out[t] = _merge_count(seq, work)


def _strict_orders(values: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Sort permutation and rank of each column under the (value, -row) key."""
    n, p = values.shape
    row_reversed = -np.arange(n, dtype=np.int64)
    orders = np.empty((p, n), dtype=np.int64)
    ranks = np.empty((p, n), dtype=np.int64)
    base = np.arange(n, dtype=np.int64)
    for k in range(p):
        order = np.lexsort((row_reversed, values[:, k]))
        orders[k] = order
        ranks[k, order] = base
    return orders, ranks


def _validate_pair(y: np.ndarray, z: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    y = np.asarray(y, dtype=np.float64)
    z = np.asarray(z, dtype=np.float64)
    if y.ndim != 1 or z.ndim != 1:
        raise ValueError("inputs must be one-dimensional vectors")
    if y.shape[0] != z.shape[0]:
        raise ValueError(f"length mismatch: {y.shape[0]} vs {z.shape[0]}")
    if y.shape[0] < 2:
        raise ValueError(f"need at least 2 observations, got {y.shape[0]}")
    if not (np.all(np.isfinite(y)) and np.all(np.isfinite(z))):
        raise ValueError("inputs contain non-finite entries")
    return y, z


def pair_counts(y: np.ndarray, z: np.ndarray) -> tuple[int, int]:
    """Exact (concordant, discordant) counts for two vectors."""
    y, z = _validate_pair(y, z)
    n = y.shape[0]
    orders, ranks = _strict_orders(np.column_stack((y, z)))
    seq = ranks[1][orders[0]]
    discordant = int(_merge_count(seq.copy(), np.empty(n, dtype=np.int64)))
    total = n * (n - 1) // 2
    return total - discordant, discordant


def tau_pair(y: np.ndarray, z: np.ndarray) -> float:
    """Kendall tau of two vectors: (C - D) / C(n, 2)."""
    concordant, discordant = pair_counts(y, z)
    return (concordant - discordant) / (concordant + discordant)


def pair_counts_bruteforce(y: np.ndarray, z: np.ndarray) -> tuple[int, int]:
    """O(n^2) oracle for pair_counts: every pair, literal sign products."""
    y, z = _validate_pair(y, z)
    n = y.shape[0]
    i, j = np.triu_indices(n, 1)
    # a difference that overflows to +-inf keeps its sign, so the literal
    # form is safe; silence the spurious overflow warning it triggers
    with np.errstate(over="ignore"):
        sy = sign_with_positive_zero(y[i] - y[j])
        sz = sign_with_positive_zero(z[i] - z[j])
    discordant = int(np.count_nonzero(sy * sz < 0.0))
    return n * (n - 1) // 2 - discordant, discordant


def tau_pair_bruteforce(y: np.ndarray, z: np.ndarray) -> float:
    """O(n^2) oracle for tau_pair."""
    concordant, discordant = pair_counts_bruteforce(y, z)
    return (concordant - discordant) / (concordant + discordant)


def kendall_tau_matrix(values: np.ndarray) -> np.ndarray:
    """Kendall tau matrix of the columns of an n-by-p array.

    Computes the upper triangle from exact discordance counts and mirrors
    it, so the output is bitwise symmetric with an exactly unit diagonal.
    """
    values = np.ascontiguousarray(values, dtype=np.float64)
    if values.ndim != 2:
        raise ValueError("expected an n-by-p array")
    n, p = values.shape
    if n < 2:
        raise ValueError(f"need at least 2 observations, got n={n}")
    if not np.all(np.isfinite(values)):
        raise ValueError("inputs contain non-finite entries")
    tau = np.ones((p, p), dtype=np.float64)
    if p == 1:
        return tau
    orders, ranks = _strict_orders(values)
    first, second = np.triu_indices(p, 1)
    first = first.astype(np.int64)
    second = second.astype(np.int64)
    counts = np.empty(first.shape[0], dtype=np.int64)
    _discordant_counts(orders, ranks, first, second, counts)
    total = n * (n - 1) // 2
    off = (total - 2 * counts) / total
    tau[first, second] = off
    tau[second, first] = off
    return tau


def tau_matrix(data: DataMatrix) -> CorrelationMatrix:
    """Kendall tau matrix of a data matrix's columns."""
    return CorrelationMatrix(p=data.p, entries=kendall_tau_matrix(data.values))


def rescale_tau(tau: CorrelationMatrix) -> np.ndarray:
    """Affine rescaling: 3/2 times tau off the diagonal, ones on it.

    Output entries may leave [-1, 1], so this returns a plain array
    rather than a CorrelationMatrix.
    """
    out = 1.5 * tau.entries
    np.fill_diagonal(out, 1.0)
    return out


def spearman_matrix(data: DataMatrix) -> CorrelationMatrix:
    """Pearson correlation of within-column ranks.

    Ties are rejected: under continuous marginals a tie indicates
    corrupted input, and midranking would silently change the estimand.
    """
    n, p = data.n, data.p
    ranks = np.empty((n, p), dtype=np.float64)
    base = np.arange(1, n + 1, dtype=np.float64)
    for k in range(p):
        col = data.values[:, k]
        if np.unique(col).size < n:
            raise ValueError(f"ties in column {k}: ranks are not well defined")
        ranks[np.argsort(col, kind="stable"), k] = base
    centered = ranks - (n + 1) / 2.0
    gram = centered.T @ centered
    norms = np.sqrt(np.diag(gram))
    entries = gram / np.outer(norms, norms)
    entries = np.triu(entries) + np.triu(entries, 1).T
    np.clip(entries, -1.0, 1.0, out=entries)
    np.fill_diagonal(entries, 1.0)
    return CorrelationMatrix(p=p, entries=entries)


def set_thread_count(count: int) -> int:
    """Set the worker count for the pair loop; returns the effective value.

    Requests beyond the compiled pool size are clamped rather than
    rejected, so callers can ask for a fixed count portably.
    """
    if count < 1:
        raise ValueError(f"thread count must be >= 1, got {count}")
    effective = min(count, numba.config.NUMBA_NUM_THREADS)
    numba.set_num_threads(effective)
    return effective
