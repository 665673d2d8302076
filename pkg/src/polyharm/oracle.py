"""Finite-difference polyharmonic operator used as an independent check.

The n-fold operator is the n-fold composition of the standard second
difference Laplacian, applied to samples on a local ``(2n+1)^m`` cube around
the evaluation point. It is O(h^2) accurate and knows nothing about how the
field was built.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Protocol

import numpy as np
from scipy.interpolate import RegularGridInterpolator

from .grid import Grid

DEFAULT_H_LADDER = (1e-1, 5e-2, 2.5e-2, 1.25e-2)
# roundoff grows like h**-(2n); n = 3 needs a coarser ladder
COARSE_H_LADDER = (2e-1, 1e-1, 5e-2, 2.5e-2)
ROUNDOFF_FLOOR = 1e-11
ORDER_BAND = (1.7, 2.3)


class SamplerRangeError(ValueError):
    """A query fell outside the domain of a tabulated field."""


class FieldSampler(Protocol):
    def __call__(self, points: np.ndarray) -> np.ndarray: ...


class FunctionField:
    """Adapt a callable ``f(points) -> values`` taking ``(N, m)`` arrays.

    With ``vectorized=False`` the callable is invoked once per point with a
    length-``m`` vector.
    """

    def __init__(self, func: Callable, m: int, vectorized: bool = True):
        self.func = func
        self.m = m
        self.vectorized = vectorized

    def __call__(self, points):
        pts = np.atleast_2d(np.asarray(points, dtype=float))
        if self.vectorized:
            return np.asarray(self.func(pts), dtype=float).reshape(len(pts))
        return np.array([float(self.func(p)) for p in pts])


class TabulatedField:
    """Multilinear interpolation of samples on a :class:`Grid`.

    Queries outside the grid raise :class:`SamplerRangeError`.
    """

    def __init__(self, grid: Grid, values):
        self.grid = grid
        self.m = grid.ndim
        vals = np.asarray(values, dtype=float).reshape(grid.counts)
        self._interp = RegularGridInterpolator(grid.axes(), vals, method="linear",
                                               bounds_error=True)

    def __call__(self, points):
        pts = np.atleast_2d(np.asarray(points, dtype=float))
        try:
            return self._interp(pts)
        except ValueError as exc:
            raise SamplerRangeError(str(exc)) from None


def as_sampler(field, m: int | None = None) -> FieldSampler:
    if hasattr(field, "m") and callable(field):
        return field
    if callable(field):
        if m is None:
            raise ValueError("dimension m required to wrap a bare callable")
        return FunctionField(field, m)
    raise TypeError(f"cannot sample {type(field).__name__}")


def _laplacian_valid(samples: np.ndarray, h: float) -> np.ndarray:
    """Second-difference Laplacian on the interior of a sample cube."""
    m = samples.ndim
    inner = tuple(slice(1, -1) for _ in range(m))
    out = np.zeros(tuple(s - 2 for s in samples.shape))
    for ax in range(m):
        lo = list(inner)
        mid = list(inner)
        hi = list(inner)
        lo[ax], mid[ax], hi[ax] = slice(None, -2), slice(1, -1), slice(2, None)
        out += samples[tuple(hi)] - 2 * samples[tuple(mid)] + samples[tuple(lo)]
    return out / h**2


def _stencil_points(point, n: int, h: float) -> np.ndarray:
    point = np.asarray(point, dtype=float)
    offsets = h * np.arange(-n, n + 1)
    mesh = np.meshgrid(*[p + offsets for p in point], indexing="ij")
    return np.stack([g.ravel() for g in mesh], axis=-1)


def apply_composed(samples: np.ndarray, n: int, h: float) -> float:
    """Apply the discrete Laplacian ``n`` times to a ``(2n+1)^m`` cube."""
    arr = np.asarray(samples, dtype=float)
    for _ in range(n):
        arr = _laplacian_valid(arr, h)
    return float(arr.reshape(-1)[0])


def fd_polyharmonic(field, point, n: int, h: float) -> float:
    """n-fold composed second-difference Laplacian of ``field`` at ``point``."""
    if not 1 <= n <= 3:
        raise ValueError(f"finite-difference oracle supports 1 <= n <= 3, got {n}")
    if not h > 0:
        raise ValueError("step h must be positive")
    point = np.asarray(point, dtype=float)
    m = point.size
    sampler = as_sampler(field, m)
    pts = _stencil_points(point, n, h)
    vals = np.asarray(sampler(pts), dtype=float).reshape((2 * n + 1,) * m)
    return apply_composed(vals, n, h)


def fd_laplacian(field, point, h: float) -> float:
    """``sum_i (f(x + h e_i) - 2 f(x) + f(x - h e_i)) / h^2``."""
    point = np.asarray(point, dtype=float)
    m = point.size
    sampler = as_sampler(field, m)
    eye = np.eye(m) * h
    pts = np.vstack([point[None, :], point + eye, point - eye])
    vals = np.asarray(sampler(pts), dtype=float)
    return float((vals[1:m + 1].sum() + vals[m + 1:].sum() - 2 * m * vals[0]) / h**2)


def stencil_weights(m: int, n: int) -> np.ndarray:
    """Weights ``W`` with ``fd_polyharmonic = sum(W * samples) / h**(2n)``."""
    size = (2 * n + 1) ** m
    weights = np.empty(size)
    for k in range(size):
        impulse = np.zeros(size)
        impulse[k] = 1.0
        weights[k] = apply_composed(impulse.reshape((2 * n + 1,) * m), n, 1.0)
    return weights.reshape((2 * n + 1,) * m)


@dataclass
class ConvergenceResult:
    h: np.ndarray
    values: np.ndarray
    errors: np.ndarray
    order: float | None
    status: str
    band: tuple = ORDER_BAND

    def to_dict(self) -> dict:
        return {"h": self.h.tolist(), "residuals": self.values.tolist(),
                "errors": self.errors.tolist(), "observed_order": self.order,
                "verdict": self.status, "order_band": list(self.band)}


def default_h_ladder(n: int) -> tuple:
    return COARSE_H_LADDER if n >= 3 else DEFAULT_H_LADDER


def observed_order(h, errors, floor: float = ROUNDOFF_FLOOR) -> float | None:
    """Least-squares slope of ``log|error|`` against ``log h``, above ``floor``."""
    h = np.asarray(h, dtype=float)
    err = np.abs(np.asarray(errors, dtype=float))
    keep = err > floor
    if keep.sum() < 2:
        return None
    slope, _ = np.polyfit(np.log(h[keep]), np.log(err[keep]), 1)
    return float(slope)


def convergence_study(field, point, n: int, h_list=None, exact: float = 0.0,
                      band=ORDER_BAND, floor: float = ROUNDOFF_FLOOR) -> ConvergenceResult:
    """Observed order of ``fd_polyharmonic - exact`` over a decreasing ladder.

    ``status`` is ``"pass"`` when the order falls in ``band``,
    ``"inconclusive"`` when fewer than two errors clear the roundoff
    ``floor``, else ``"fail"``. ``h_list`` defaults to :func:`default_h_ladder`.
    """
    h = np.asarray(default_h_ladder(n) if h_list is None else h_list, dtype=float)
    if h.size < 3:
        raise ValueError("convergence study needs at least three step sizes")
    if np.any(np.diff(h) >= 0) or np.any(h <= 0):
        raise ValueError("step sizes must be positive and strictly decreasing")
    vals = np.array([fd_polyharmonic(field, point, n, hk) for hk in h])
    errs = vals - exact
    p = observed_order(h, errs, floor)
    if p is None:
        status = "inconclusive"
    else:
        status = "pass" if band[0] <= p <= band[1] else "fail"
    return ConvergenceResult(h, vals, errs, p, status, tuple(band))
