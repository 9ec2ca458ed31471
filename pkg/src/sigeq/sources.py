"""Source and channel models.

Scalar sources expose exact partial moments over intervals, which is what the
quantizer solver and the equilibrium certificates integrate against.  The
gridded source treats its density as piecewise linear between nodes and
integrates it in closed form segment by segment.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from scipy.special import ndtr, ndtri

from ._linalg import as_matrix, check_pd, check_psd, check_symmetric
from ._rng import normals_from_uniform
from .errors import ArgumentError, ShapeError

_SQRT_2PI = float(np.sqrt(2.0 * np.pi))


def _readonly(a: np.ndarray) -> np.ndarray:
    a = np.array(a, dtype=float)
    a.setflags(write=False)
    return a


class ScalarSource:
    """Common interface for one-dimensional sources.

    ``mass``, ``mean_on`` and ``square_on`` are the zeroth, first and second
    partial moments over an interval (a, b]; everything the cheap-talk module
    needs reduces to these three.
    """

    def support(self) -> tuple[float, float]:
        raise NotImplementedError

    def mass(self, a: float, b: float) -> float:
        raise NotImplementedError

    def mean_on(self, a: float, b: float) -> float:
        raise NotImplementedError

    def square_on(self, a: float, b: float) -> float:
        raise NotImplementedError

    def quantile(self, q):
        raise NotImplementedError

    def sample(self, u: np.ndarray) -> np.ndarray:
        """Map uniform draws in [0, 1) to source realizations (inverse CDF)."""
        raise NotImplementedError

    # Derived quantities -------------------------------------------------

    def mean(self) -> float:
        lo, hi = self.support()
        return self.mean_on(lo, hi)

    def variance(self) -> float:
        lo, hi = self.support()
        mu = self.mean()
        return self.square_on(lo, hi) - mu * mu

    def conditional_mean(self, a: float, b: float) -> float:
        w = self.mass(a, b)
        if w <= 0.0:
            raise ArgumentError(f"interval ({a}, {b}] carries no probability mass")
        return self.mean_on(a, b) / w

    def expected_sq_error(self, a: float, b: float, c: float) -> float:
        """E[(m - c)^2 ; m in (a, b]]."""
        return self.square_on(a, b) - 2.0 * c * self.mean_on(a, b) + c * c * self.mass(a, b)

    def bounded(self) -> bool:
        lo, hi = self.support()
        return np.isfinite(lo) and np.isfinite(hi)


@dataclass(frozen=True)
class UniformSource(ScalarSource):
    low: float
    high: float

    def __post_init__(self):
        if not self.low < self.high:
            raise ArgumentError(f"uniform source needs low < high, got [{self.low}, {self.high}]")

    def support(self):
        return (self.low, self.high)

    def _clip(self, a, b):
        return max(a, self.low), min(b, self.high)

    def mass(self, a, b):
        a, b = self._clip(a, b)
        if b <= a:
            return 0.0
        return (b - a) / (self.high - self.low)

    def mean_on(self, a, b):
        a, b = self._clip(a, b)
        if b <= a:
            return 0.0
        return 0.5 * (b * b - a * a) / (self.high - self.low)

    def square_on(self, a, b):
        a, b = self._clip(a, b)
        if b <= a:
            return 0.0
        return (b ** 3 - a ** 3) / (3.0 * (self.high - self.low))

    def quantile(self, q):
        return self.low + (self.high - self.low) * np.asarray(q, dtype=float)

    def sample(self, u):
        return self.low + (self.high - self.low) * np.asarray(u, dtype=float)


@dataclass(frozen=True)
class GaussianSource(ScalarSource):
    mean_value: float
    variance_value: float

    def __post_init__(self):
        if not self.variance_value > 0.0:
            raise ArgumentError("gaussian source needs variance > 0")

    def support(self):
        return (-np.inf, np.inf)

    def _std(self) -> float:
        return float(np.sqrt(self.variance_value))

    def _z(self, x: float) -> float:
        if np.isinf(x):
            return x
        return (x - self.mean_value) / self._std()

    def mass(self, a, b):
        if b <= a:
            return 0.0
        return float(ndtr(self._z(b)) - ndtr(self._z(a)))

    def mean_on(self, a, b):
        if b <= a:
            return 0.0
        za, zb = self._z(a), self._z(b)
        # E[z; za < z <= zb] = phi(za) - phi(zb) for the standard normal
        part = _phi(za) - _phi(zb)
        return self.mean_value * self.mass(a, b) + self._std() * part

    def square_on(self, a, b):
        if b <= a:
            return 0.0
        za, zb = self._z(a), self._z(b)
        w = self.mass(a, b)
        # E[z^2; ...] = Phi(zb) - Phi(za) + za phi(za) - zb phi(zb)
        z2 = w + _zphi(za) - _zphi(zb)
        ez = _phi(za) - _phi(zb)
        s = self._std()
        return self.mean_value ** 2 * w + 2.0 * self.mean_value * s * ez + s * s * z2

    def quantile(self, q):
        return self.mean_value + self._std() * ndtri(np.asarray(q, dtype=float))

    def sample(self, u):
        return self.mean_value + self._std() * normals_from_uniform(np.asarray(u, dtype=float))


def _phi(z: float) -> float:
    if np.isinf(z):
        return 0.0
    return float(np.exp(-0.5 * z * z) / _SQRT_2PI)


def _zphi(z: float) -> float:
    if np.isinf(z):
        return 0.0
    return z * _phi(z)


@dataclass(frozen=True)
class GriddedDensitySource(ScalarSource):
    """Density given by values on an ascending grid, linear between nodes.

    The input density must integrate to one (trapezoidal rule on its own
    grid) within 1e-9; it is renormalized internally so partial masses sum
    to exactly one.
    """

    grid: np.ndarray
    density: np.ndarray
    _cdf: np.ndarray = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        grid = _readonly(self.grid)
        dens = _readonly(self.density)
        if grid.ndim != 1 or grid.shape != dens.shape or grid.size < 2:
            raise ShapeError("grid and density must be equal-length 1-D arrays (>= 2 nodes)")
        if np.any(np.diff(grid) <= 0.0):
            raise ArgumentError("grid must be strictly ascending")
        if np.any(dens < 0.0):
            raise ArgumentError("density values must be nonnegative")
        total = float(np.trapezoid(dens, grid))
        if abs(total - 1.0) > 1e-9:
            raise ArgumentError(f"density integrates to {total!r}, expected 1 within 1e-9")
        dens = _readonly(dens / total)
        seg = 0.5 * (dens[:-1] + dens[1:]) * np.diff(grid)
        cdf = np.concatenate([[0.0], np.cumsum(seg)])
        cdf[-1] = 1.0
        object.__setattr__(self, "grid", grid)
        object.__setattr__(self, "density", dens)
        object.__setattr__(self, "_cdf", _readonly(cdf))

    def support(self):
        return (float(self.grid[0]), float(self.grid[-1]))

    def _segments(self, a: float, b: float):
        """Yield clipped segments (x0, x1, f0, f1) overlapping (a, b)."""
        g, d = self.grid, self.density
        a = max(a, g[0])
        b = min(b, g[-1])
        if b <= a:
            return
        i0 = max(int(np.searchsorted(g, a, side="right")) - 1, 0)
        i1 = min(int(np.searchsorted(g, b, side="left")), g.size - 1)
        for i in range(i0, i1):
            x0, x1 = float(g[i]), float(g[i + 1])
            f0, f1 = float(d[i]), float(d[i + 1])
            s = (f1 - f0) / (x1 - x0)
            xa, xb = max(x0, a), min(x1, b)
            if xb <= xa:
                continue
            fa = f0 + s * (xa - x0)
            fb = f0 + s * (xb - x0)
            yield xa, xb, fa, fb

    def mass(self, a, b):
        return float(sum((xb - xa) * 0.5 * (fa + fb) for xa, xb, fa, fb in self._segments(a, b)))

    def mean_on(self, a, b):
        total = 0.0
        for xa, xb, fa, fb in self._segments(a, b):
            h = xb - xa
            s = (fb - fa) / h
            # int_0^h (fa + s t)(xa + t) dt
            total += fa * (xa * h + h * h / 2.0) + s * (xa * h * h / 2.0 + h ** 3 / 3.0)
        return float(total)

    def square_on(self, a, b):
        total = 0.0
        for xa, xb, fa, fb in self._segments(a, b):
            h = xb - xa
            s = (fb - fa) / h
            # int_0^h (fa + s t)(xa + t)^2 dt
            i0 = xa * xa * h + xa * h * h + h ** 3 / 3.0
            i1 = xa * xa * h * h / 2.0 + 2.0 * xa * h ** 3 / 3.0 + h ** 4 / 4.0
            total += fa * i0 + s * i1
        return float(total)

    def quantile(self, q):
        q = np.asarray(q, dtype=float)
        scalar = q.ndim == 0
        q = np.atleast_1d(q)
        g, d, cdf = self.grid, self.density, self._cdf
        idx = np.clip(np.searchsorted(cdf, q, side="right") - 1, 0, g.size - 2)
        x0 = g[idx]
        h = g[idx + 1] - x0
        f0 = d[idx]
        s = (d[idx + 1] - f0) / h
        resid = q - cdf[idx]
        # solve f0 t + s t^2 / 2 = resid on [0, h]
        t = np.empty_like(q)
        lin = np.abs(s) * h < 1e-14 * np.maximum(f0, 1e-300)
        with np.errstate(divide="ignore", invalid="ignore"):
            t_lin = resid / np.where(f0 > 0.0, f0, np.inf)
            disc = np.maximum(f0 * f0 + 2.0 * s * resid, 0.0)
            t_quad = np.where(
                np.abs(s) > 0.0,
                (np.sqrt(disc) - f0) / np.where(s != 0.0, s, 1.0),
                t_lin,
            )
        t = np.where(lin | (s == 0.0), t_lin, t_quad)
        t = np.clip(t, 0.0, h)
        out = x0 + t
        return float(out[0]) if scalar else out

    def sample(self, u):
        return self.quantile(np.asarray(u, dtype=float))


def _cov_list(cov, n: int, name: str, pd: bool) -> tuple[np.ndarray, ...]:
    arr = np.asarray(cov, dtype=float)
    if arr.ndim <= 2:
        mats = [as_matrix(arr, name)]
    else:
        mats = [as_matrix(m, name) for m in arr]
    out = []
    for i, m in enumerate(mats):
        if m.shape != (n, n):
            raise ShapeError(f"{name}[{i}] must be {n}x{n}, got {m.shape}")
        check_symmetric(m, f"{name}[{i}]")
        if pd:
            check_pd(m, f"{name}[{i}]")
        else:
            check_psd(m, f"{name}[{i}]")
        out.append(_readonly(m))
    return tuple(out)


@dataclass(frozen=True)
class GaussMarkovSource:
    """Gauss-Markov source m_{k+1} = G m_k + v_k with Gaussian initial state.

    ``noise_cov`` may be a single matrix (replicated across stages) or a
    sequence of per-stage process-noise covariances.
    """

    G: np.ndarray
    initial_cov: np.ndarray
    noise_cov: tuple[np.ndarray, ...]
    stationary_noise: bool = field(default=False, compare=False)

    def __init__(self, G, initial_cov, noise_cov):
        G = as_matrix(G, "G")
        n = G.shape[0]
        init = as_matrix(initial_cov, "initial_cov")
        if init.shape != (n, n):
            raise ShapeError(f"initial_cov must be {n}x{n}")
        check_symmetric(init, "initial_cov")
        check_psd(init, "initial_cov")
        covs = _cov_list(noise_cov, n, "noise_cov", pd=False)
        stationary = np.asarray(noise_cov, dtype=float).ndim <= 2
        object.__setattr__(self, "G", _readonly(G))
        object.__setattr__(self, "initial_cov", _readonly(init))
        object.__setattr__(self, "noise_cov", covs)
        object.__setattr__(self, "stationary_noise", stationary)

    @classmethod
    def scalar(cls, g: float, initial_var: float, noise_var) -> "GaussMarkovSource":
        nv = np.asarray(noise_var, dtype=float)
        if nv.ndim == 0:
            noise = [[float(nv)]]
        else:
            noise = [[[float(v)]] for v in nv]
        return cls([[float(g)]], [[float(initial_var)]], noise)

    @property
    def n(self) -> int:
        return self.G.shape[0]

    @property
    def is_scalar(self) -> bool:
        return self.n == 1

    @property
    def g(self) -> float:
        if not self.is_scalar:
            raise ArgumentError("g is only defined for scalar sources")
        return float(self.G[0, 0])

    def noise_cov_at(self, k: int) -> np.ndarray:
        if self.stationary_noise:
            return self.noise_cov[0]
        if k >= len(self.noise_cov):
            raise ArgumentError(
                f"stage {k} process noise requested but only {len(self.noise_cov)} provided"
            )
        return self.noise_cov[k]

    def stage_cov(self, k: int) -> np.ndarray:
        """Covariance of m_k under the recursion Sigma(k+1) = G Sigma(k) G' + noise."""
        cov = np.array(self.initial_cov)
        for i in range(k):
            cov = self.G @ cov @ self.G.T + self.noise_cov_at(i)
        return cov

    def stage_var(self, k: int) -> float:
        if not self.is_scalar:
            raise ArgumentError("stage_var is only defined for scalar sources")
        return float(self.stage_cov(k)[0, 0])


@dataclass(frozen=True)
class ChannelModel:
    """Additive Gaussian channels y_k = x_k + w_k with per-stage noise."""

    noise_cov: tuple[np.ndarray, ...]
    stationary: bool = field(default=False, compare=False)

    def __init__(self, noise_cov):
        arr = np.asarray(noise_cov, dtype=float)
        p = as_matrix(arr if arr.ndim <= 2 else arr[0], "channel noise_cov").shape[0]
        covs = _cov_list(noise_cov, p, "channel noise_cov", pd=True)
        object.__setattr__(self, "noise_cov", covs)
        object.__setattr__(self, "stationary", arr.ndim <= 2)

    @classmethod
    def scalar(cls, noise_var) -> "ChannelModel":
        nv = np.asarray(noise_var, dtype=float)
        if nv.ndim == 0:
            return cls([[float(nv)]])
        return cls([[[float(v)]] for v in nv])

    @property
    def p(self) -> int:
        return self.noise_cov[0].shape[0]

    def noise_cov_at(self, k: int) -> np.ndarray:
        if self.stationary:
            return self.noise_cov[0]
        if k >= len(self.noise_cov):
            raise ArgumentError(
                f"stage {k} channel noise requested but only {len(self.noise_cov)} provided"
            )
        return self.noise_cov[k]

    def noise_var_at(self, k: int) -> float:
        if self.p != 1:
            raise ArgumentError("noise_var_at is only defined for scalar channels")
        return float(self.noise_cov_at(k)[0, 0])
