"""Dense symmetric eigendecomposition and empirical spectral distributions.

The solver is the classic two-stage dense path: Householder reduction to
tridiagonal form, then implicitly shifted QL iteration on the tridiagonal,
with optional accumulation of the orthogonal transforms when eigenvectors
are requested. Everything is plain loops compiled with numba; a build
option can route through LAPACK instead when raw speed matters more than
a dependency-free spectrum.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numba
import numpy as np

__all__ = [
    "SpectralDistribution",
    "ConvergenceError",
    "eigenvalues_symmetric",
    "symmetric_eigendecomposition",
    "esd_cdf",
    "histogram",
]

_EPS = 2.220446049250313e-16
# QL sweeps are pooled across all eigenvalues; 30 per value is far beyond
# what a symmetric tridiagonal ever needs (typically < 2n total).
_SWEEPS_PER_VALUE = 30


class ConvergenceError(RuntimeError):
    """QL iteration exhausted its sweep budget; input is pathological."""


@dataclass(frozen=True)
class SpectralDistribution:
    """The uniform probability measure on a matrix's p eigenvalues."""

    eigenvalues: np.ndarray
    p: int

    def __post_init__(self) -> None:
        if self.eigenvalues.ndim != 1 or self.eigenvalues.shape[0] != self.p:
            raise ValueError(f"expected {self.p} eigenvalues")
        if self.p < 1:
            raise ValueError("need at least one eigenvalue")
        if not np.all(np.isfinite(self.eigenvalues)):
            raise ValueError("eigenvalues must be finite")
        if np.any(np.diff(self.eigenvalues) < 0.0):
            raise ValueError("eigenvalues must be sorted nondecreasing")
        self.eigenvalues.setflags(write=False)

    @classmethod
    def from_values(cls, values: np.ndarray) -> "SpectralDistribution":
        values = np.sort(np.asarray(values, dtype=np.float64))
        return cls(eigenvalues=values, p=values.shape[0])


@numba.njit(cache=True)
def _tridiagonalize(a, d, e, want_vectors):
    """Householder reduction of a symmetric matrix, in place.

    On exit d holds the diagonal, e the subdiagonal (e[0] unused), and a
    the accumulated orthogonal transform when want_vectors is set.
    """
    n = a.shape[0]
    for i in range(n - 1, 0, -1):
        l = i - 1
        h = 0.0
        if l > 0:
            scale = 0.0
            for k in range(l + 1):
                scale += abs(a[i, k])
            if scale == 0.0:
                e[i] = a[i, l]
            else:
                for k in range(l + 1):
                    a[i, k] /= scale
                    h += a[i, k] * a[i, k]
                f = a[i, l]
                g = -math.sqrt(h) if f >= 0.0 else math.sqrt(h)
                e[i] = scale * g
                h -= f * g
                a[i, l] = f - g
                f = 0.0
                for j in range(l + 1):
                    if want_vectors:
                        a[j, i] = a[i, j] / h
                    g = 0.0
                    for k in range(j + 1):
                        g += a[j, k] * a[i, k]
                    for k in range(j + 1, l + 1):
                        g += a[k, j] * a[i, k]
                    e[j] = g / h
                    f += e[j] * a[i, j]
                hh = f / (h + h)
                for j in range(l + 1):
                    f = a[i, j]
                    g = e[j] - hh * f
                    e[j] = g
                    for k in range(j + 1):
                        a[j, k] -= f * e[k] + g * a[i, k]
        else:
            e[i] = a[i, l]
        d[i] = h
    d[0] = 0.0
    e[0] = 0.0
    for i in range(n):
        if want_vectors:
            if d[i] != 0.0:
                for j in range(i):
                    g = 0.0
                    for k in range(i):
                        g += a[i, k] * a[k, j]
                    for k in range(i):
                        a[k, j] -= g * a[k, i]
            d[i] = a[i, i]
            a[i, i] = 1.0
            for j in range(i):
                a[j, i] = 0.0
                a[i, j] = 0.0
        else:
            d[i] = a[i, i]


@numba.njit(cache=True)
def _ql_implicit(d, e, z, want_vectors, sweep_budget):
    """Implicitly shifted QL on a tridiagonal (d, e); returns sweeps or -1.

    e is consumed; z accumulates rotations when want_vectors is set.
    """
    n = d.shape[0]
    for i in range(1, n):
        e[i - 1] = e[i]
    e[n - 1] = 0.0
    total = 0
    for l in range(n):
        while True:
            m = n - 1
            for candidate in range(l, n - 1):
                dd = abs(d[candidate]) + abs(d[candidate + 1])
                if abs(e[candidate]) <= _EPS * dd:
                    m = candidate
                    break
            if m == l:
                break
            total += 1
            if total > sweep_budget:
                return -1
            g = (d[l + 1] - d[l]) / (2.0 * e[l])
            r = math.hypot(g, 1.0)
            denom = g + (r if g >= 0.0 else -r)
            g = d[m] - d[l] + e[l] / denom
            s = 1.0
            c = 1.0
            shift = 0.0
            i = m - 1
            underflow = False
            while i >= l:
                f = s * e[i]
                b = c * e[i]
                r = math.hypot(f, g)
                e[i + 1] = r
                if r == 0.0:
                    d[i + 1] -= shift
                    e[m] = 0.0
                    underflow = True
                    break
                s = f / r
                c = g / r
                g = d[i + 1] - shift
                r = (d[i] - g) * s + 2.0 * c * b
                shift = s * r
                d[i + 1] = g + shift
                g = c * r - b
                if want_vectors:
                    for k in range(n):
                        f2 = z[k, i + 1]
                        z[k, i + 1] = s * z[k, i] + c * f2
                        z[k, i] = c * z[k, i] - s * f2
                i -= 1
            if underflow:
                continue
            d[l] -= shift
            e[l] = g
            e[m] = 0.0
    return total


def _validated_square(matrix: np.ndarray) -> np.ndarray:
    matrix = np.asarray(matrix, dtype=np.float64)
    if matrix.ndim != 2 or matrix.shape[0] != matrix.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {matrix.shape}")
    if not np.all(np.isfinite(matrix)):
        raise ValueError("matrix contains non-finite entries")
    scale = max(1.0, float(np.abs(matrix).max()))
    asymmetry = float(np.abs(matrix - matrix.T).max())
    if asymmetry > 1e-12 * scale:
        raise ValueError(
            f"matrix is not symmetric: max |M - M^T| = {asymmetry:.3e} "
            f"exceeds 1e-12 * {scale:.3e}"
        )
    return matrix


def _decompose(matrix: np.ndarray, want_vectors: bool) -> tuple[np.ndarray, np.ndarray]:
    work = np.array(matrix, dtype=np.float64, copy=True, order="C")
    n = work.shape[0]
    d = np.empty(n, dtype=np.float64)
    e = np.empty(n, dtype=np.float64)
    _tridiagonalize(work, d, e, want_vectors)
    status = _ql_implicit(d, e, work, want_vectors, _SWEEPS_PER_VALUE * n)
    if status < 0:
        raise ConvergenceError(
            f"QL iteration did not converge within {_SWEEPS_PER_VALUE * n} sweeps"
        )
    order = np.argsort(d, kind="stable")
    return d[order], work[:, order]


def eigenvalues_symmetric(matrix: np.ndarray, method: str = "ql") -> SpectralDistribution:
    """All eigenvalues of a symmetric matrix, sorted nondecreasing.

    method "ql" is the in-repo dense path; "lapack" delegates to the
    platform solver for speed at large p. Both validate symmetry first:
    max |M - M^T| must be at most 1e-12 * max(1, max |M|).
    """
    matrix = _validated_square(matrix)
    if method == "ql":
        values, _ = _decompose(matrix, want_vectors=False)
    elif method == "lapack":
        values = np.linalg.eigvalsh(matrix)
    else:
        raise ValueError(f"unknown method: {method!r}")
    values = np.sort(values)
    return SpectralDistribution(eigenvalues=values, p=values.shape[0])


def symmetric_eigendecomposition(matrix: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Eigenvalues (sorted) and the matching orthonormal eigenvector columns."""
    matrix = _validated_square(matrix)
    return _decompose(matrix, want_vectors=True)


def esd_cdf(dist: SpectralDistribution, x: np.ndarray | float) -> np.ndarray | float:
    """Right-continuous spectral CDF: fraction of eigenvalues <= x."""
    result = np.searchsorted(dist.eigenvalues, x, side="right") / dist.p
    if np.isscalar(x):
        return float(result)
    return result


def histogram(
    dist: SpectralDistribution, bins: int, value_range: tuple[float, float]
) -> list[tuple[float, float]]:
    """Density-normalized histogram as (bin_center, density) rows.

    Density is count / (p * width): the in-range area equals the fraction
    of eigenvalues falling inside value_range.
    """
    lo, hi = float(value_range[0]), float(value_range[1])
    if not (math.isfinite(lo) and math.isfinite(hi)) or lo >= hi:
        raise ValueError(f"degenerate range: [{lo}, {hi}]")
    if bins < 1:
        raise ValueError(f"need at least one bin, got {bins}")
    counts, edges = np.histogram(dist.eigenvalues, bins=bins, range=(lo, hi))
    widths = np.diff(edges)
    centers = 0.5 * (edges[:-1] + edges[1:])
    density = counts / (dist.p * widths)
    return list(zip(centers.tolist(), density.tolist()))
