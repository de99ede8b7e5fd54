"""The Marchenko-Pastur limit law and its affine images.

LimitLaw(gamma, scale, shift) is the law of scale*Y + shift with Y
standard MP(gamma): continuous density on [a, b] = [(1-sqrt(gamma))^2,
(1+sqrt(gamma))^2] (pushed through the affine map) plus a point mass
max(0, 1 - 1/gamma) at the shift point when gamma > 1.

The CDF integrates the density under the substitution
x = a + (b - a) sin^2(theta), which absorbs the square-root edge factors:
the transformed integrand is analytic on [0, pi/2] even at gamma = 1,
where the density itself blows up like x^(-1/2) at the origin. Panel
prefix sums are cached per law, so repeated CDF queries (the KS metric
asks for thousands) cost one Gauss panel each.
"""

from __future__ import annotations

import functools
import math
from dataclasses import dataclass

import numpy as np

from .datagen import Marginal, generate_samples
from .spectra import SpectralDistribution, eigenvalues_symmetric

__all__ = [
    "LimitLaw",
    "mp_density",
    "mp_cdf",
    "support",
    "density_grid",
    "wishart_esd_reference",
]

_PANELS = 1024
_GAUSS_ORDER = 8


@dataclass(frozen=True)
class LimitLaw:
    """An affine image scale*Y + shift of the standard MP(gamma) law."""

    gamma: float
    scale: float = 1.0
    shift: float = 0.0

    def __post_init__(self) -> None:
        if not (math.isfinite(self.gamma) and self.gamma > 0.0):
            raise ValueError(f"gamma must be positive and finite, got {self.gamma}")
        if not math.isfinite(self.scale) or self.scale == 0.0:
            raise ValueError(f"scale must be nonzero and finite, got {self.scale}")
        if self.scale < 0.0:
            raise ValueError(f"scale must be positive, got {self.scale}")
        if not math.isfinite(self.shift):
            raise ValueError(f"shift must be finite, got {self.shift}")

    @property
    def a(self) -> float:
        """Lower support edge of the standard law."""
        return (1.0 - math.sqrt(self.gamma)) ** 2

    @property
    def b(self) -> float:
        """Upper support edge of the standard law."""
        return (1.0 + math.sqrt(self.gamma)) ** 2

    @property
    def point_mass_at_shift(self) -> float:
        """Atom carried at the shift point (origin pre-transform)."""
        return max(0.0, 1.0 - 1.0 / self.gamma)

    @classmethod
    def standard_mp(cls, gamma: float) -> "LimitLaw":
        return cls(gamma=gamma)

    @classmethod
    def kendall_affine(cls, gamma: float) -> "LimitLaw":
        """The tau-matrix limit: (2/3)Y + 1/3."""
        return cls(gamma=gamma, scale=2.0 / 3.0, shift=1.0 / 3.0)


def support(law: LimitLaw) -> tuple[float, float]:
    """Endpoints of the continuous part (the atom may sit below them)."""
    return law.shift + law.scale * law.a, law.shift + law.scale * law.b


def mp_density(law: LimitLaw, x: np.ndarray | float) -> np.ndarray | float:
    """Continuous density at x; the atom contributes nothing here."""
    scalar = np.isscalar(x)
    x = np.asarray(x, dtype=np.float64)
    t = (x - law.shift) / law.scale
    a, b = law.a, law.b
    inside = (t > a) & (t < b)
    ts = np.where(inside, t, 0.5 * (a + b))
    density = np.where(
        inside,
        np.sqrt((b - ts) * (ts - a)) / (2.0 * np.pi * ts * law.gamma * law.scale),
        0.0,
    )
    if scalar:
        return float(density)
    return density


class _CdfTable:
    """Cached panel quadrature of the standard MP density.

    Integrates g(theta) = ((b - a) sin(theta) cos(theta))^2
    / (pi * gamma * x(theta)) over [0, pi/2] with fixed-order
    Gauss-Legendre per panel; prefix sums make partial integrals cheap.
    """

    def __init__(self, gamma: float):
        self.gamma = gamma
        self.a = (1.0 - math.sqrt(gamma)) ** 2
        self.b = (1.0 + math.sqrt(gamma)) ** 2
        nodes, weights = np.polynomial.legendre.leggauss(_GAUSS_ORDER)
        self._nodes = nodes
        self._weights = weights
        self._panel_width = (math.pi / 2.0) / _PANELS
        starts = np.arange(_PANELS) * self._panel_width
        panel_values = self._panel_integrals(starts, np.full(_PANELS, self._panel_width))
        self._prefix = np.concatenate(([0.0], np.cumsum(panel_values)))
        self.total_mass = float(self._prefix[-1])

    def _integrand(self, theta: np.ndarray) -> np.ndarray:
        span = self.b - self.a
        s = np.sin(theta)
        c = np.cos(theta)
        x = self.a + span * s * s
        # x = 0 only when a = 0 and theta = 0, where the ratio has the
        # finite limit span * cos^2 / (pi gamma); avoid the 0/0 there
        safe = np.where(x > 0.0, x, 1.0)
        out = (span * s * c) ** 2 / (math.pi * self.gamma * safe)
        return np.where(x > 0.0, out, span * c * c / (math.pi * self.gamma))

    def _panel_integrals(self, starts: np.ndarray, widths: np.ndarray) -> np.ndarray:
        half = 0.5 * widths
        theta = starts[:, None] + half[:, None] * (self._nodes[None, :] + 1.0)
        values = self._integrand(theta)
        return half * (values @ self._weights)

    def cdf_standard(self, t: np.ndarray) -> np.ndarray:
        """Continuous-part mass on (-inf, t] for the standard law."""
        t = np.asarray(t, dtype=np.float64)
        span = self.b - self.a
        frac = np.clip((t - self.a) / span, 0.0, 1.0)
        theta = np.arcsin(np.sqrt(frac))
        index = np.minimum((theta / self._panel_width).astype(np.int64), _PANELS - 1)
        starts = index * self._panel_width
        partial = self._panel_integrals(starts.ravel(), (theta - starts).ravel())
        return self._prefix[index] + partial.reshape(theta.shape)


@functools.lru_cache(maxsize=64)
def _cdf_table(gamma: float) -> _CdfTable:
    return _CdfTable(gamma)


def mp_cdf(law: LimitLaw, x: np.ndarray | float) -> np.ndarray | float:
    """Distribution function: atom (when gamma > 1) plus integrated density."""
    scalar = np.isscalar(x)
    x = np.asarray(x, dtype=np.float64)
    table = _cdf_table(law.gamma)
    t = (x - law.shift) / law.scale
    out = table.cdf_standard(t)
    atom = law.point_mass_at_shift
    if atom > 0.0:
        out = out + atom * (x >= law.shift)
    out = np.clip(out, 0.0, 1.0)
    # past the upper edge the mass is all in: snap over quadrature residue
    out = np.where(t >= table.b, 1.0, out)
    if scalar:
        return float(out)
    return out


def density_grid(law: LimitLaw, points: int = 512) -> tuple[np.ndarray, np.ndarray]:
    """Evenly spaced (x, density) samples across the continuous support."""
    if points < 2:
        raise ValueError(f"need at least 2 grid points, got {points}")
    lo, hi = support(law)
    x = np.linspace(lo, hi, points)
    return x, np.asarray(mp_density(law, x))


def wishart_esd_reference(n: int, p: int, seed: int = 0) -> SpectralDistribution:
    """Spectrum of a Gaussian sample covariance, the classical MP case.

    Cross-checks the law, metric, and solver modules against each other:
    its ESD must approach standard MP(p/n) with no tau machinery involved.
    """
    if n < 1 or p < 1:
        raise ValueError(f"need n, p >= 1, got n={n}, p={p}")
    if n >= 2:
        values = generate_samples(n, p, Marginal.STANDARD_GAUSSIAN, seed).values
    else:
        from .datagen import _column_uniforms

        values = np.empty((n, p))
        for k in range(p):
            u = _column_uniforms(seed, Marginal.STANDARD_GAUSSIAN, k, n)
            values[:, k] = Marginal.STANDARD_GAUSSIAN.quantile(u)
    covariance = values.T @ values / n
    covariance = np.triu(covariance) + np.triu(covariance, 1).T
    return eigenvalues_symmetric(covariance)
