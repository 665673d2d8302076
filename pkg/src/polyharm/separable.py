"""Product solutions of the polyharmonic equation and their exact residuals.

A solution is ``u(x) = X_1(x_1) ... X_{m-1}(x_{m-1}) X_m(x_m)`` where the first
``m-1`` factors are :class:`~polyharm.modes.Mode1D` instances and the last is a
:class:`~polyharm.modes.LastFactor` (or its exponential-basis twin) whose
``K`` equals the sum of the other separation constants.

``Delta^n u`` is computed by summing the multinomial expansion term by term,
each term being a product of single even-order factor derivatives.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .expansion import expand_polyharmonic
from .grid import Grid
from .modes import (Affine, BasisError, ExpBasisFactor, Hyperbolic, LastFactor,
                    Mode1D, Oscillatory, _PolyCarrierFactor)

K_TOL = 1e-12


class ConsistencyError(ValueError):
    """The last factor's ``K`` does not match the other modes."""


def _as_points(points, m: int) -> np.ndarray:
    pts = np.asarray(points, dtype=float)
    if pts.ndim == 1:
        pts = pts[None, :]
    if pts.ndim != 2 or pts.shape[1] != m:
        raise ValueError(f"expected points of dimension {m}, got shape {np.shape(points)}")
    return pts


def polyharmonic_terms(factors, n: int, points) -> np.ndarray:
    """Expansion terms of ``Delta^n`` applied to ``prod_i factors[i](x_i)``.

    Returns an array of shape ``(n_terms, n_points)`` whose column sums are
    ``Delta^n u`` at each point.
    """
    m = len(factors)
    pts = _as_points(points, m)
    cache = {}

    def deriv(i, order):
        key = (i, order)
        if key not in cache:
            cache[key] = np.asarray(factors[i].derivative(pts[:, i], order), dtype=float)
        return cache[key]

    rows = []
    for term in expand_polyharmonic(n, m):
        val = np.full(pts.shape[0], float(term.coefficient))
        for i, order in enumerate(term.derivative_orders):
            val = val * deriv(i, order)
        rows.append(val)
    return np.array(rows)


def product_eval(factors, points) -> np.ndarray:
    pts = _as_points(points, len(factors))
    val = np.ones(pts.shape[0])
    for i, fct in enumerate(factors):
        val = val * fct.derivative(pts[:, i], 0)
    return val


@dataclass(frozen=True)
class SeparableSolution:
    modes: tuple
    last: _PolyCarrierFactor
    n: int

    def __post_init__(self):
        object.__setattr__(self, "modes", tuple(self.modes))
        object.__setattr__(self, "n", int(self.n))
        if not self.modes:
            raise ValueError("need at least one mode (m >= 2)")
        if not all(isinstance(md, Mode1D) for md in self.modes):
            raise TypeError("modes must be Mode1D instances")
        if not isinstance(self.last, _PolyCarrierFactor):
            raise TypeError("last must be a LastFactor or ExpBasisFactor")
        if self.n < 1:
            raise ValueError(f"operator power n must be >= 1, got {self.n}")
        ksum = self.lambda_sum
        if abs(self.last.K - ksum) > K_TOL:
            raise ConsistencyError(
                f"last factor has K={self.last.K!r} but the mode constants sum to {ksum!r}")
        if self.last.n != self.n:
            raise BasisError(
                f"last factor multiplicity {self.last.n} does not match operator power {self.n}")

    @property
    def m(self) -> int:
        return len(self.modes) + 1

    @property
    def lambda_sum(self) -> float:
        return float(sum(md.lam for md in self.modes))

    @property
    def factors(self) -> tuple:
        return self.modes + (self.last,)

    def __call__(self, points):
        return self.eval(points)

    def eval(self, points):
        """Value at one point (returns a float) or at an ``(N, m)`` array."""
        single = np.ndim(points) == 1
        val = product_eval(self.factors, points)
        return float(val[0]) if single else val

    def polyharmonic_terms(self, points, n: int | None = None) -> np.ndarray:
        return polyharmonic_terms(self.factors, self.n if n is None else n, points)

    def apply_polyharmonic_exact(self, points, n: int | None = None):
        single = np.ndim(points) == 1
        val = self.polyharmonic_terms(points, n).sum(axis=0)
        return float(val[0]) if single else val

    def to_dict(self) -> dict:
        return {"n": self.n, "modes": [md.to_dict() for md in self.modes],
                "last": self.last.to_dict()}


def assemble(modes, last, n) -> SeparableSolution:
    return SeparableSolution(tuple(modes), last, n)


def evaluate(sol: SeparableSolution, point):
    return sol.eval(point)


def apply_polyharmonic_exact(sol: SeparableSolution, point):
    return sol.apply_polyharmonic_exact(point)


@dataclass
class ResidualReport:
    """Residual statistics over a point set.

    ``max_rel`` divides ``max_abs`` by the largest cancellation scale
    ``sum |term|`` over the points.
    """

    max_abs: float
    max_rel: float
    scale: float
    residuals: np.ndarray
    scales: np.ndarray
    points: np.ndarray = field(repr=False)

    @property
    def per_point(self) -> list[dict]:
        return [{"point": p.tolist(), "residual": float(r), "scale": float(s)}
                for p, r, s in zip(self.points, self.residuals, self.scales)]

    def to_dict(self, per_point: bool = False) -> dict:
        out = {"max_abs": self.max_abs, "max_rel": self.max_rel, "scale": self.scale,
               "n_points": int(len(self.residuals))}
        if per_point:
            out["per_point"] = self.per_point
        return out


def report_from_terms(terms: np.ndarray, points) -> ResidualReport:
    res = terms.sum(axis=0)
    scales = np.abs(terms).sum(axis=0)
    max_abs = float(np.max(np.abs(res)))
    scale = float(np.max(scales))
    if scale > 0:
        max_rel = max_abs / scale
    else:
        max_rel = 0.0 if max_abs == 0 else float("inf")
    return ResidualReport(max_abs, max_rel, scale, res, scales, np.asarray(points, dtype=float))


def residual_report(sol: SeparableSolution, points, n: int | None = None) -> ResidualReport:
    pts = np.asarray(points, dtype=float)
    if pts.size == 0:
        raise ValueError("residual_report needs at least one point")
    pts = _as_points(pts, sol.m)
    return report_from_terms(sol.polyharmonic_terms(pts, n), pts)


@dataclass
class FieldSamples:
    """Row-major samples on a :class:`Grid` (last axis fastest)."""

    values: np.ndarray
    grid: Grid

    def reshaped(self) -> np.ndarray:
        return self.values.reshape(self.grid.counts)


def eval_grid(sol, grid: Grid) -> FieldSamples:
    """Sample any point-array callable (e.g. a solution) on ``grid``."""
    m = getattr(sol, "m", grid.ndim)
    if grid.ndim != m:
        raise ValueError(f"grid has {grid.ndim} axes but the field is {m}-dimensional")
    return FieldSamples(np.asarray(sol(grid.points()), dtype=float), grid)


def random_solution(rng: np.random.Generator, m: int, n: int, coeff_range: float = 2.0,
                    freq_range=(0.3, 1.5), basis: str | None = None,
                    overcount: bool = False) -> SeparableSolution:
    """Draw a solution with random mode variants, frequencies and coefficients.

    ``basis`` picks the last-factor representation for ``K < 0`` (``"trig"``
    or ``"exp"``; random when None). With ``overcount`` the last factor uses
    the ``r <= 2n`` basis and its highest term is forced nonzero.
    """
    if m < 2:
        raise ValueError("m must be >= 2")

    def coeffs(k):
        return tuple(rng.uniform(-coeff_range, coeff_range, size=k))

    modes = []
    for _ in range(m - 1):
        kind = rng.integers(3)
        a, b = coeffs(2)
        w = rng.uniform(*freq_range)
        if kind == 0:
            modes.append(Oscillatory(w, a, b))
        elif kind == 1:
            modes.append(Hyperbolic(w, a, b))
        else:
            modes.append(Affine(a, b))
    K = float(sum(md.lam for md in modes))
    if overcount and K == 0:
        modes[0] = Oscillatory(rng.uniform(*freq_range), *coeffs(2))
        K = float(sum(md.lam for md in modes))
    if K == 0:
        last = LastFactor(0.0, n, coeffs(2 * n))
    else:
        nt = 2 * n if overcount else n
        c, d = list(coeffs(nt)), list(coeffs(nt))
        if overcount:
            c[-1] = np.copysign(rng.uniform(0.5, coeff_range), c[-1])
        cls_basis = basis or ("exp" if rng.integers(2) else "trig")
        if K < 0 and cls_basis == "exp":
            last = ExpBasisFactor(K, n, c, d, overcount=overcount)
        else:
            last = LastFactor(K, n, c, d, overcount=overcount)
    return SeparableSolution(tuple(modes), last, n)
