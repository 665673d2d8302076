"""Time-dependent variants: ``alpha Delta^n u = u_t`` and ``beta^2 Delta^n u = u_tt``.

For an m-fold product of simple modes, ``Delta^n u = k u`` with
``k = (sum_i lam_i)^n``, so the time factor solves ``T' = alpha k T`` or
``T'' = beta^2 k T``.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import sqrt

import numpy as np

from .modes import Mode1D
from .separable import ConsistencyError, polyharmonic_terms, product_eval

K_RTOL = 1e-12


@dataclass(frozen=True)
class ParabolicTime:
    """``T(t) = A exp(alpha k t)``."""

    alpha: float
    k: float
    A: float = 1.0

    def derivative(self, t, order: int = 0):
        t = np.asarray(t, dtype=float)
        rate = self.alpha * self.k
        return self.A * rate**order * np.exp(rate * t)

    def __call__(self, t):
        return self.derivative(t, 0)

    def to_dict(self):
        return {"type": "parabolic", "alpha": self.alpha, "k": self.k, "A": self.A}


@dataclass(frozen=True)
class HyperbolicTime:
    """Solutions of ``T'' = beta^2 k T`` by the sign of ``k``.

    ``k > 0``: ``C exp(s t) + D exp(-s t)``, ``s = beta sqrt(k)``;
    ``k < 0``: ``C cos(s t) + D sin(s t)``, ``s = beta sqrt(-k)``;
    ``k == 0``: ``C + D t``.
    """

    beta: float
    k: float
    C: float = 1.0
    D: float = 0.0

    def __post_init__(self):
        if self.beta < 0:
            raise ValueError("beta must be >= 0")

    @property
    def rate(self) -> float:
        return self.beta * sqrt(abs(self.k))

    def derivative(self, t, order: int = 0):
        if order not in (0, 1, 2):
            raise ValueError("time derivatives of order 0..2 only")
        t = np.asarray(t, dtype=float)
        s = self.rate
        if self.k > 0 and s > 0:
            return self.C * s**order * np.exp(s * t) + self.D * (-s) ** order * np.exp(-s * t)
        if self.k < 0 and s > 0:
            c, sn = np.cos(s * t), np.sin(s * t)
            val = [self.C * c + self.D * sn, -self.C * sn + self.D * c,
                   -(self.C * c + self.D * sn)][order]
            return s**order * val
        return [self.C + self.D * t, np.full_like(t, self.D), np.zeros_like(t)][order]

    def __call__(self, t):
        return self.derivative(t, 0)

    def to_dict(self):
        return {"type": "hyperbolic", "beta": self.beta, "k": self.k, "C": self.C, "D": self.D}


@dataclass(frozen=True)
class SpaceTimeSolution:
    """``u(x, t) = prod_i X_i(x_i) T(t)`` over ``m`` simple modes."""

    spatial: tuple
    time: ParabolicTime | HyperbolicTime
    n: int
    check: bool = True

    def __post_init__(self):
        object.__setattr__(self, "spatial", tuple(self.spatial))
        if not self.spatial:
            raise ValueError("need at least one spatial mode")
        if not all(isinstance(md, Mode1D) for md in self.spatial):
            raise TypeError("spatial factors must be Mode1D instances")
        if self.n < 1:
            raise ValueError("operator power n must be >= 1")
        if self.check:
            k = self.expected_k
            if abs(self.time.k - k) > K_RTOL * max(1.0, abs(k)):
                raise ConsistencyError(
                    f"time factor has k={self.time.k!r}, spatial modes require {k!r}")

    @property
    def m(self) -> int:
        return len(self.spatial)

    @property
    def kind(self) -> str:
        return "parabolic" if isinstance(self.time, ParabolicTime) else "hyperbolic"

    @property
    def expected_k(self) -> float:
        return float(sum(md.lam for md in self.spatial)) ** self.n

    def __call__(self, points):
        """Values at ``(N, m+1)`` points whose last column is time."""
        pts = np.atleast_2d(np.asarray(points, dtype=float))
        return product_eval(self.spatial, pts[:, :-1]) * self.time(pts[:, -1])

    def to_dict(self):
        return {"n": self.n, "modes": [md.to_dict() for md in self.spatial],
                "time": self.time.to_dict()}


def make_parabolic(spatial_modes, n: int, alpha: float, A: float = 1.0) -> SpaceTimeSolution:
    k = float(sum(md.lam for md in spatial_modes)) ** n
    return SpaceTimeSolution(tuple(spatial_modes), ParabolicTime(alpha, k, A), n)


def make_hyperbolic(spatial_modes, n: int, beta: float, C: float = 1.0,
                    D: float = 0.0) -> SpaceTimeSolution:
    k = float(sum(md.lam for md in spatial_modes)) ** n
    return SpaceTimeSolution(tuple(spatial_modes), HyperbolicTime(beta, k, C, D), n)


@dataclass
class SpaceTimeReport:
    passed: bool
    max_abs: float
    max_rel: float
    tol: float
    residuals: np.ndarray
    scales: np.ndarray

    def to_dict(self) -> dict:
        return {"passed": self.passed, "max_abs": self.max_abs, "max_rel": self.max_rel,
                "tol": self.tol, "n_points": int(self.residuals.size)}


def spacetime_terms(sol: SpaceTimeSolution, points):
    """Signed contributions whose sum is the PDE defect, shape ``(n_terms + 1, N)``.

    The spatial operator is applied term by term through the multinomial
    expansion; the last row is the time-derivative side.
    """
    pts = np.atleast_2d(np.asarray(points, dtype=float))
    x, t = pts[:, :-1], pts[:, -1]
    space = polyharmonic_terms(sol.spatial, sol.n, x)
    if sol.kind == "parabolic":
        coef, order = sol.time.alpha, 1
    else:
        coef, order = sol.time.beta**2, 2
    lhs = coef * space * sol.time(t)
    rhs = product_eval(sol.spatial, x) * sol.time.derivative(t, order)
    return np.vstack([lhs, -rhs[None, :]])


def spacetime_residual(sol: SpaceTimeSolution, points, tol: float = 1e-10) -> SpaceTimeReport:
    """Defect ``alpha Delta^n u - u_t`` (or ``beta^2 Delta^n u - u_tt``).

    Passes when ``max |defect| <= tol * max(sum |term|)``.
    """
    terms = spacetime_terms(sol, points)
    res = terms.sum(axis=0)
    scales = np.abs(terms).sum(axis=0)
    max_abs = float(np.max(np.abs(res)))
    scale = float(np.max(scales))
    max_rel = max_abs / scale if scale > 0 else (0.0 if max_abs == 0 else float("inf"))
    return SpaceTimeReport(max_rel <= tol, max_abs, max_rel, tol, res, scales)
