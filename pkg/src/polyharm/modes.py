"""One-dimensional separated factors and their exact derivatives.

Two kinds of factor live here:

* ``Mode1D`` variants (``Oscillatory``, ``Hyperbolic``, ``Affine``) solve
  ``X'' = lam * X`` for a separation constant ``lam`` of fixed sign.
* Last-coordinate factors (``LastFactor``, ``ExpBasisFactor``) solve
  ``(D^2 + K)^n X = 0`` where ``K`` is the sum of the other constants. They
  are polynomial-modulated carriers, differentiated with the Leibniz rule.

All ``derivative`` methods accept scalars or arrays and never differentiate
numerically.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import comb, sqrt

import numpy as np

MAX_ORDER = 64


class UnsupportedOrderError(ValueError):
    """Derivative order is negative or above ``MAX_ORDER``."""


class BasisError(ValueError):
    """Coefficient arrays do not match the multiplicity of the roots."""


def _check_order(order: int) -> int:
    order = int(order)
    if order < 0 or order > MAX_ORDER:
        raise UnsupportedOrderError(
            f"derivative order must be in [0, {MAX_ORDER}], got {order}")
    return order


class Mode1D:
    """Base for single-coordinate modes ``X`` with ``X'' = lam * X``."""

    a: float
    b: float

    @property
    def lam(self) -> float:
        raise NotImplementedError

    def derivative(self, x, order: int = 0):
        raise NotImplementedError

    def __call__(self, x):
        return self.derivative(x, 0)

    def with_coeffs(self, a: float, b: float) -> "Mode1D":
        raise NotImplementedError

    def to_dict(self) -> dict:
        raise NotImplementedError


@dataclass(frozen=True)
class Oscillatory(Mode1D):
    """``a cos(omega x) + b sin(omega x)``, ``lam = -omega**2``."""

    omega: float
    a: float = 1.0
    b: float = 0.0

    def __post_init__(self):
        if not self.omega > 0:
            raise ValueError(f"omega must be > 0, got {self.omega} (use Affine for zero)")

    @property
    def lam(self) -> float:
        return -self.omega**2

    def derivative(self, x, order: int = 0):
        order = _check_order(order)
        x = np.asarray(x, dtype=float)
        c, s = np.cos(self.omega * x), np.sin(self.omega * x)
        # d/dx: cos -> -sin, sin -> cos; period four
        q = order % 4
        if q == 0:
            val = self.a * c + self.b * s
        elif q == 1:
            val = -self.a * s + self.b * c
        elif q == 2:
            val = -self.a * c - self.b * s
        else:
            val = self.a * s - self.b * c
        return self.omega**order * val

    def with_coeffs(self, a, b):
        return Oscillatory(self.omega, a, b)

    def to_dict(self):
        return {"variant": "osc", "omega": self.omega, "a": self.a, "b": self.b}


@dataclass(frozen=True)
class Hyperbolic(Mode1D):
    """``a cosh(mu x) + b sinh(mu x)``, ``lam = mu**2``."""

    mu: float
    a: float = 1.0
    b: float = 0.0

    def __post_init__(self):
        if not self.mu > 0:
            raise ValueError(f"mu must be > 0, got {self.mu} (use Affine for zero)")

    @property
    def lam(self) -> float:
        return self.mu**2

    def derivative(self, x, order: int = 0):
        order = _check_order(order)
        x = np.asarray(x, dtype=float)
        ch, sh = np.cosh(self.mu * x), np.sinh(self.mu * x)
        if order % 2 == 0:
            val = self.a * ch + self.b * sh
        else:
            val = self.a * sh + self.b * ch
        return self.mu**order * val

    def with_coeffs(self, a, b):
        return Hyperbolic(self.mu, a, b)

    def to_dict(self):
        return {"variant": "hyp", "mu": self.mu, "a": self.a, "b": self.b}


@dataclass(frozen=True)
class Affine(Mode1D):
    """``a + b x``, ``lam = 0``."""

    a: float = 1.0
    b: float = 0.0

    @property
    def lam(self) -> float:
        return 0.0

    def derivative(self, x, order: int = 0):
        order = _check_order(order)
        x = np.asarray(x, dtype=float)
        if order == 0:
            return self.a + self.b * x
        if order == 1:
            return np.full_like(x, self.b)
        return np.zeros_like(x)

    def with_coeffs(self, a, b):
        return Affine(a, b)

    def to_dict(self):
        return {"variant": "affine", "a": self.a, "b": self.b}


def mode_eval(mode: Mode1D, x, order: int = 0):
    return mode.derivative(x, order)


def mode_lambda(mode: Mode1D) -> float:
    return mode.lam


def mode_for_lambda(lam: float, a: float = 1.0, b: float = 0.0) -> Mode1D:
    """The mode family whose separation constant is ``lam``."""
    if lam < 0:
        return Oscillatory(sqrt(-lam), a, b)
    if lam > 0:
        return Hyperbolic(sqrt(lam), a, b)
    return Affine(a, b)


@dataclass
class CheckReport:
    """Pointwise pass/fail summary for an identity check."""

    passed: bool
    residuals: np.ndarray
    scales: np.ndarray
    tol: float

    @property
    def max_rel(self) -> float:
        with np.errstate(divide="ignore", invalid="ignore"):
            rel = np.where(self.scales > 0, np.abs(self.residuals) / self.scales,
                           np.where(self.residuals == 0, 0.0, np.inf))
        return float(np.max(rel)) if rel.size else 0.0

    def __bool__(self):
        return self.passed

    def to_dict(self) -> dict:
        return {"passed": self.passed, "tol": self.tol, "max_rel": self.max_rel,
                "residuals": self.residuals.tolist()}


def check_ode_chain(mode: Mode1D, j: int, sample_points, tol: float = 1e-12) -> CheckReport:
    """Check ``X^(2j) = lam**j * X`` at each sample point.

    Residuals are measured relative to ``max(|lam**j X|, 1)``.
    """
    if not 1 <= j <= 8:
        raise ValueError(f"chain index j must be in [1, 8], got {j}")
    x = np.atleast_1d(np.asarray(sample_points, dtype=float))
    rhs = mode.lam**j * mode.derivative(x, 0)
    res = mode.derivative(x, 2 * j) - rhs
    scale = np.maximum(np.abs(rhs), 1.0)
    return CheckReport(bool(np.all(np.abs(res) <= tol * scale)), res, scale, tol)


def _poly_derivative(p: int, k: int, x):
    """``d^k/dx^k x**p``."""
    if k > p:
        return np.zeros_like(x)
    coef = 1
    for i in range(k):
        coef *= p - i
    return coef * x ** (p - k)


class _PolyCarrierFactor:
    """Shared Leibniz-rule evaluation of ``sum_r x**(r-1) * carrier_r(x)``.

    Subclasses provide ``_carrier_derivative(r, x, order)``.
    """

    K: float
    n: int
    overcount: bool

    @property
    def n_terms(self) -> int:
        raise NotImplementedError

    def _carrier_derivative(self, r: int, x, order: int):
        raise NotImplementedError

    def _term_is_zero(self, r: int) -> bool:
        raise NotImplementedError

    def derivative(self, x, order: int = 0):
        order = _check_order(order)
        x = np.asarray(x, dtype=float)
        total = np.zeros_like(x)
        for r in range(1, self.n_terms + 1):
            if self._term_is_zero(r):
                continue
            p = r - 1
            for k in range(min(order, p) + 1):
                total = total + comb(order, k) * _poly_derivative(p, k, x) \
                    * self._carrier_derivative(r, x, order - k)
        return total

    def __call__(self, x):
        return self.derivative(x, 0)

    @property
    def max_valid_terms(self) -> int:
        # the roots of (s^2 + K)^n have multiplicity n, or 2n when K == 0
        return 2 * self.n if self.K == 0 else self.n


def _as_coeffs(values, length: int, name: str) -> tuple[float, ...]:
    vals = tuple(float(v) for v in (values if values is not None else ()))
    if len(vals) > length:
        raise BasisError(f"{name} has {len(vals)} entries, at most {length} allowed")
    if not all(np.isfinite(vals)):
        raise BasisError(f"{name} must be finite")
    return vals + (0.0,) * (length - len(vals))


@dataclass(frozen=True)
class LastFactor(_PolyCarrierFactor):
    """Last-coordinate factor solving ``(D^2 + K)^n X = 0``.

    * ``K < 0``: ``sum_r x**(r-1) (c_r cosh(s x) + d_r sinh(s x))``, ``s = sqrt(-K)``
    * ``K > 0``: ``sum_r x**(r-1) (c_r cos(s x) + d_r sin(s x))``, ``s = sqrt(K)``
    * ``K == 0``: ``sum_r c_r x**(r-1)`` with ``r <= 2n`` and ``d`` unused

    For ``K != 0`` only ``r <= n`` terms solve the equation. Use
    :meth:`overcounted` to build the over-counted ``r <= 2n`` basis, whose
    extra terms do not.
    """

    K: float
    n: int
    c: tuple = ()
    d: tuple = ()
    overcount: bool = False

    def __post_init__(self):
        if int(self.n) < 1:
            raise BasisError(f"multiplicity n must be >= 1, got {self.n}")
        object.__setattr__(self, "n", int(self.n))
        object.__setattr__(self, "K", float(self.K))
        length = self.n_terms
        object.__setattr__(self, "c", _as_coeffs(self.c, length, "c"))
        if self.K == 0:
            if any(self.d):
                raise BasisError("K == 0 factor takes no d coefficients")
            object.__setattr__(self, "d", ())
        else:
            object.__setattr__(self, "d", _as_coeffs(self.d, length, "d"))

    @classmethod
    def overcounted(cls, K, n, c=(), d=()) -> "LastFactor":
        """Permissive constructor accepting ``r <= 2n`` terms for any ``K``."""
        return cls(K, n, c, d, overcount=True)

    @property
    def n_terms(self) -> int:
        return 2 * self.n if (self.K == 0 or self.overcount) else self.n

    @property
    def rate(self) -> float:
        return sqrt(abs(self.K))

    def _carrier(self, r: int) -> Mode1D:
        cr = self.c[r - 1]
        if self.K == 0:
            return Affine(cr, 0.0)
        dr = self.d[r - 1]
        if self.K < 0:
            return Hyperbolic(self.rate, cr, dr)
        return Oscillatory(self.rate, cr, dr)

    def _carrier_derivative(self, r, x, order):
        return self._carrier(r).derivative(x, order)

    def _term_is_zero(self, r):
        if self.K == 0:
            return self.c[r - 1] == 0
        return self.c[r - 1] == 0 and self.d[r - 1] == 0

    def to_exp_basis(self) -> "ExpBasisFactor":
        """Exact change of basis ``cosh/sinh -> exp(-s x), exp(s x)``."""
        if not self.K < 0:
            raise BasisError("exponential basis exists only for K < 0")
        q = tuple((cr - dr) / 2 for cr, dr in zip(self.c, self.d))
        f = tuple((cr + dr) / 2 for cr, dr in zip(self.c, self.d))
        return ExpBasisFactor(self.K, self.n, q, f, overcount=self.overcount)

    def to_dict(self) -> dict:
        out = {"K": self.K, "n": self.n, "c": list(self.c)}
        if self.K != 0:
            out["d"] = list(self.d)
        if self.overcount:
            out["overcount"] = True
        return out


@dataclass(frozen=True)
class ExpBasisFactor(_PolyCarrierFactor):
    """``sum_r x**(r-1) (q_r exp(-s x) + f_r exp(s x))`` with ``K = -s**2 < 0``.

    ``q`` weights the decaying exponentials, ``f`` the growing ones.
    """

    K: float
    n: int
    q: tuple = ()
    f: tuple = ()
    overcount: bool = False

    def __post_init__(self):
        if not float(self.K) < 0:
            raise BasisError(f"exponential basis needs K < 0, got {self.K}")
        if int(self.n) < 1:
            raise BasisError(f"multiplicity n must be >= 1, got {self.n}")
        object.__setattr__(self, "n", int(self.n))
        object.__setattr__(self, "K", float(self.K))
        object.__setattr__(self, "q", _as_coeffs(self.q, self.n_terms, "q"))
        object.__setattr__(self, "f", _as_coeffs(self.f, self.n_terms, "f"))

    @classmethod
    def overcounted(cls, K, n, q=(), f=()) -> "ExpBasisFactor":
        return cls(K, n, q, f, overcount=True)

    @property
    def n_terms(self) -> int:
        return 2 * self.n if self.overcount else self.n

    @property
    def rate(self) -> float:
        return sqrt(-self.K)

    def _carrier_derivative(self, r, x, order):
        s = self.rate
        out = 0.0
        if self.q[r - 1]:
            out = out + self.q[r - 1] * (-s) ** order * np.exp(-s * x)
        if self.f[r - 1]:
            out = out + self.f[r - 1] * s**order * np.exp(s * x)
        return out + np.zeros_like(x)

    def _term_is_zero(self, r):
        return self.q[r - 1] == 0 and self.f[r - 1] == 0

    def to_trig_basis(self) -> LastFactor:
        c = tuple(qr + fr for qr, fr in zip(self.q, self.f))
        d = tuple(fr - qr for qr, fr in zip(self.q, self.f))
        return LastFactor(self.K, self.n, c, d, overcount=self.overcount)

    def to_dict(self) -> dict:
        out = {"K": self.K, "n": self.n, "basis": "exp",
               "q": list(self.q), "f": list(self.f)}
        if self.overcount:
            out["overcount"] = True
        return out


def last_factor_eval(lf, x, order: int = 0):
    return lf.derivative(x, order)


def annihilation_terms(lf, n: int, x):
    """Terms ``C(n,k) K**k X^(2n-2k)`` of ``(D^2 + K)^n X``, shape ``(n+1, ...)``."""
    x = np.asarray(x, dtype=float)
    return np.stack([comb(n, k) * lf.K**k * lf.derivative(x, 2 * n - 2 * k)
                     for k in range(n + 1)])


def annihilation_check(lf, n: int, sample_points, tol: float = 1e-12) -> CheckReport:
    """Check ``(D^2 + K)^n X = 0`` relative to the cancellation scale."""
    x = np.atleast_1d(np.asarray(sample_points, dtype=float))
    terms = annihilation_terms(lf, n, x)
    res = terms.sum(axis=0)
    scale = np.abs(terms).sum(axis=0)
    return CheckReport(bool(np.all(np.abs(res) <= tol * scale)), res, scale, tol)
