"""Distances between spectral distributions and between matrices.

The Lévy distance is found by bisection on epsilon, with each feasibility
check evaluated on the merged breakpoint set of both CDFs together with
its +-epsilon translates. For step functions (empirical CDFs) that check
is exact: the two inequality sides are piecewise constant between
breakpoints, and both one-sided values are inspected at every breakpoint.
Against a smooth law the sup on each piece sits at a piece endpoint for
the same reason, so the result is exact there too.
"""

from __future__ import annotations

import numpy as np

from .mplaw import LimitLaw, mp_cdf, support
from .spectra import SpectralDistribution, eigenvalues_symmetric

__all__ = [
    "CdfFunction",
    "EmpiricalCdf",
    "LawCdf",
    "levy_distance",
    "ks_distance",
    "frobenius_distance_sq_normalized",
    "check_levy_frobenius_bound",
]

# Bisection runs to 1e-8, an order tighter than the 1e-6 the callers are
# promised, so downstream slacks (bound checker, triangle tests) keep room.
_BISECT_TOL = 1e-8


class CdfFunction:
    """A nondecreasing right-continuous CDF, 0 below lo and 1 above hi.

    Subclasses provide point evaluation, left limits, and the breakpoint
    set that distance computations must inspect.
    """

    lo: float
    hi: float

    def cdf(self, x: np.ndarray) -> np.ndarray:
        raise NotImplementedError

    def cdf_left(self, x: np.ndarray) -> np.ndarray:
        raise NotImplementedError

    def breakpoints(self) -> np.ndarray:
        raise NotImplementedError


class EmpiricalCdf(CdfFunction):
    """Step CDF of a finite sample: jumps of 1/n at each sorted atom."""

    def __init__(self, values: np.ndarray | SpectralDistribution):
        if isinstance(values, SpectralDistribution):
            values = values.eigenvalues
        values = np.sort(np.asarray(values, dtype=np.float64))
        if values.size == 0:
            raise ValueError("need at least one atom")
        if not np.all(np.isfinite(values)):
            raise ValueError("atoms must be finite")
        self._atoms = values
        self._n = values.size
        self.lo = float(values[0])
        self.hi = float(values[-1])

    def cdf(self, x: np.ndarray) -> np.ndarray:
        return np.searchsorted(self._atoms, x, side="right") / self._n

    def cdf_left(self, x: np.ndarray) -> np.ndarray:
        return np.searchsorted(self._atoms, x, side="left") / self._n

    def breakpoints(self) -> np.ndarray:
        return np.unique(self._atoms)


class LawCdf(CdfFunction):
    """CDF of a LimitLaw, with a fixed query grid as its breakpoint set.

    The grid matters only when both sides of a comparison are smooth; any
    comparison against a step CDF is already exact at the step's own
    breakpoints.
    """

    def __init__(self, law: LimitLaw, grid_points: int = 2048):
        if grid_points < 2:
            raise ValueError(f"need at least 2 grid points, got {grid_points}")
        self._law = law
        lo, hi = support(law)
        self.lo = min(lo, law.shift)
        self.hi = hi
        grid = np.linspace(self.lo, self.hi, grid_points)
        if law.point_mass_at_shift > 0.0:
            grid = np.union1d(grid, [law.shift])
        self._grid = grid

    def cdf(self, x: np.ndarray) -> np.ndarray:
        return np.asarray(mp_cdf(self._law, x))

    def cdf_left(self, x: np.ndarray) -> np.ndarray:
        x = np.asarray(x, dtype=np.float64)
        values = np.asarray(mp_cdf(self._law, x))
        atom = self._law.point_mass_at_shift
        if atom > 0.0:
            values = values - atom * (x == self._law.shift)
        return values

    def breakpoints(self) -> np.ndarray:
        return self._grid


def _merged_breakpoints(f: CdfFunction, g: CdfFunction) -> np.ndarray:
    return np.union1d(f.breakpoints(), g.breakpoints())


def ks_distance(f: CdfFunction, g: CdfFunction) -> float:
    """sup |F - G|, inspecting values and left limits at all breakpoints."""
    points = _merged_breakpoints(f, g)
    at_points = np.abs(f.cdf(points) - g.cdf(points))
    at_left = np.abs(f.cdf_left(points) - g.cdf_left(points))
    return float(max(at_points.max(), at_left.max()))


def _levy_feasible(f: CdfFunction, g: CdfFunction, points: np.ndarray, eps: float) -> bool:
    """Whether F(x-eps) - eps <= G(x) <= F(x+eps) + eps holds everywhere.

    Checked at every breakpoint of F translated by +-eps and of G, from
    the right and from the left, which covers every piece of the two
    piecewise-monotone difference functions.
    """
    lower = np.concatenate((points, points + eps))
    over = f.cdf(lower - eps) - g.cdf(lower)
    over_left = f.cdf_left(lower - eps) - g.cdf_left(lower)
    if max(over.max(), over_left.max()) > eps:
        return False
    upper = np.concatenate((points, points - eps))
    under = g.cdf(upper) - f.cdf(upper + eps)
    under_left = g.cdf_left(upper) - f.cdf_left(upper + eps)
    return max(under.max(), under_left.max()) <= eps


def levy_distance(f: CdfFunction, g: CdfFunction) -> float:
    """Levy distance by bisection, resolved well within 1e-6."""
    points = _merged_breakpoints(f, g)
    if _levy_feasible(f, g, points, 0.0):
        return 0.0
    lo, hi = 0.0, 1.0
    while hi - lo > _BISECT_TOL:
        mid = 0.5 * (lo + hi)
        if _levy_feasible(f, g, points, mid):
            hi = mid
        else:
            lo = mid
    return 0.5 * (lo + hi)


def frobenius_distance_sq_normalized(a: np.ndarray, b: np.ndarray) -> float:
    """Squared Frobenius distance divided by the dimension p."""
    a = np.asarray(a, dtype=np.float64)
    b = np.asarray(b, dtype=np.float64)
    if a.shape != b.shape:
        raise ValueError(f"shape mismatch: {a.shape} vs {b.shape}")
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError(f"expected square matrices, got shape {a.shape}")
    diff = a - b
    return float(np.sum(diff * diff) / a.shape[0])


def check_levy_frobenius_bound(
    a: np.ndarray, b: np.ndarray
) -> tuple[float, float, bool]:
    """Cubed Levy distance of two spectra against normalized Frobenius.

    Returns (levy_cubed, frob_norm, holds): the distance between the two
    empirical spectral distributions, cubed, must not exceed
    (1/p)||A - B||_F^2. A small slack absorbs the bisection tolerance.
    """
    spectrum_a = eigenvalues_symmetric(a)
    spectrum_b = eigenvalues_symmetric(b)
    levy = levy_distance(EmpiricalCdf(spectrum_a), EmpiricalCdf(spectrum_b))
    levy_cubed = levy**3
    frob_norm = frobenius_distance_sq_normalized(a, b)
    holds = levy_cubed <= frob_norm + 1e-9
    return levy_cubed, frob_norm, holds
