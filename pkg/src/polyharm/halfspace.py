"""Dirichlet problem on the half-space ``x_m > L`` with decaying modes.

Two routes are provided.

Fourier route
    The boundary data is written as a Fourier integral over ``(0, inf)^(m-1)``
    with per-axis cosine/sine coefficients, and every frequency node is
    continued into ``x_m > L`` with the bounded factor
    ``exp(-|w| (x_m - L))``. Only the single decaying term per frequency is
    kept; the growing exponentials are excluded by boundedness. For ``n > 1``
    this is the minimal solution (any ``n``, since it is harmonic).

Convolution route (``m = 2``)
    ``u(x, y) = int f(z) P(x - z, y - L) dz`` with the half-plane Poisson
    kernel ``P(x, y) = y / (pi (x^2 + y^2))``.

Multi-dimensional boundary data is restricted to tensor products of one 1-D
profile, which keeps the Fourier coefficients separable.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field, replace
from math import pi, sqrt

import numpy as np
from scipy import integrate

from ._parallel import pmap


class DomainError(ValueError):
    """Evaluation point outside the open half-space, or non-positive height."""


class IntegrabilityError(ValueError):
    """Boundary data cannot be treated as absolutely integrable."""


class ToleranceNotMetError(RuntimeError):
    """Adaptive quadrature did not reach the requested absolute tolerance."""

    def __init__(self, message, estimate=None, achieved=None):
        super().__init__(message)
        self.estimate = estimate
        self.achieved = achieved


GAUSS_CUTOFF = 9.0  # in units of the width; the tail is below exp(-81)


@dataclass(frozen=True)
class QuadConfig:
    """Quadrature settings shared by both routes.

    ``wmax`` defaults to ``wmax_factor / (x_m_min - L)``. Frequency nodes are
    ``panels`` Gauss-Legendre panels of ``order`` nodes each; the first
    panel is ``[0, w_lo_ratio * wmax]`` and the rest are geometrically
    spaced up to ``wmax``.
    """

    abs_tol: float = 1e-10
    limit: int = 400
    wmax: float | None = None
    wmax_factor: float = 40.0
    panels: int = 50
    order: int = 8
    w_lo_ratio: float = 1e-6
    decay_tol: float = 1e-3

    def resolve_wmax(self, x_m_min: float, L: float) -> float:
        if self.wmax is not None:
            return float(self.wmax)
        gap = x_m_min - L
        if not gap > 0:
            raise DomainError(f"x_m_min={x_m_min} must exceed the boundary offset L={L}")
        return self.wmax_factor / gap


def _check_tol(value, err, cfg: QuadConfig, what: str):
    if not err <= cfg.abs_tol:
        raise ToleranceNotMetError(
            f"{what}: quadrature error estimate {err:.3g} exceeds abs_tol {cfg.abs_tol:.3g}",
            estimate=value, achieved=err)
    return value


# --------------------------------------------------------------------------
# boundary data


@dataclass(frozen=True)
class BoundaryData:
    """Boundary profile ``f`` on ``R^(m-1)``.

    Built-in kinds are ``heaviside`` (1-D only), ``gaussian`` with
    ``exp(-x^2 / width^2)`` per axis, ``box`` with the indicator of
    ``[a, b]`` per axis, and ``tabulated`` (1-D, piecewise linear between
    sorted abscissae, zero outside them).
    """

    kind: str
    dim: int = 1
    width: float = 1.0
    a: float = -1.0
    b: float = 1.0
    abscissae: tuple = ()
    samples: tuple = ()

    def __post_init__(self):
        if self.kind not in ("heaviside", "gaussian", "box", "tabulated"):
            raise ValueError(f"unknown boundary data kind {self.kind!r}")
        if self.dim < 1:
            raise ValueError("boundary dimension must be >= 1")
        if self.kind in ("heaviside", "tabulated") and self.dim != 1:
            raise ValueError(f"{self.kind} boundary data is one-dimensional only")
        if self.kind == "gaussian" and not self.width > 0:
            raise ValueError("gaussian width must be positive")
        if self.kind == "box" and not self.b > self.a:
            raise ValueError("box needs a < b")
        if self.kind == "tabulated":
            xs = np.asarray(self.abscissae, dtype=float)
            fs = np.asarray(self.samples, dtype=float)
            if xs.ndim != 1 or xs.shape != fs.shape or xs.size < 2:
                raise ValueError("tabulated data needs matching 1-D abscissae and samples (>= 2)")
            if not (np.all(np.isfinite(xs)) and np.all(np.isfinite(fs))):
                raise IntegrabilityError("tabulated samples must be finite")
            if np.any(np.diff(xs) <= 0):
                raise ValueError("tabulated abscissae must be strictly increasing")
            object.__setattr__(self, "abscissae", tuple(xs.tolist()))
            object.__setattr__(self, "samples", tuple(fs.tolist()))

    @classmethod
    def heaviside(cls):
        return cls("heaviside")

    @classmethod
    def gaussian(cls, width=1.0, dim=1):
        return cls("gaussian", dim=dim, width=float(width))

    @classmethod
    def box(cls, a=-1.0, b=1.0, dim=1):
        return cls("box", dim=dim, a=float(a), b=float(b))

    @classmethod
    def tabulated(cls, abscissae, samples):
        return cls("tabulated", abscissae=tuple(abscissae), samples=tuple(samples))

    def profile(self, x):
        """The 1-D profile whose tensor power is ``f``."""
        x = np.asarray(x, dtype=float)
        if self.kind == "heaviside":
            return np.where(x > 0, 1.0, np.where(x < 0, 0.0, 0.5))
        if self.kind == "gaussian":
            return np.exp(-(x / self.width) ** 2)
        if self.kind == "box":
            return np.where((x >= self.a) & (x <= self.b), 1.0, 0.0)
        xs, fs = np.asarray(self.abscissae), np.asarray(self.samples)
        return np.interp(x, xs, fs, left=0.0, right=0.0)

    def __call__(self, x):
        x = np.asarray(x, dtype=float)
        if self.dim == 1:
            return self.profile(x[..., 0] if x.ndim >= 1 and x.shape[-1:] == (1,) and x.ndim > 1
                                else x)
        return np.prod(self.profile(x), axis=-1)

    def bounds(self) -> tuple[float, float]:
        """``(inf f, sup f)`` over ``R^(m-1)``."""
        if self.kind == "tabulated":
            fs = np.asarray(self.samples)
            return min(0.0, float(fs.min())), max(0.0, float(fs.max()))
        return 0.0, 1.0

    def check_integrable(self, cfg: QuadConfig):
        if self.kind != "tabulated":
            return
        fs = np.abs(np.asarray(self.samples))
        peak = fs.max()
        if peak > 0 and max(fs[0], fs[-1]) > cfg.decay_tol * peak:
            raise IntegrabilityError(
                "tabulated data does not decay at its ends "
                f"(end samples {self.samples[0]!r}, {self.samples[-1]!r}); pad with zeros")

    @property
    def dc_level(self) -> float:
        # zero-frequency mass not captured by the (0, inf) integral
        return 0.5 if self.kind == "heaviside" else 0.0

    def to_dict(self) -> dict:
        d = {"kind": self.kind, "dim": self.dim}
        if self.kind == "gaussian":
            d["width"] = self.width
        elif self.kind == "box":
            d["a"], d["b"] = self.a, self.b
        elif self.kind == "tabulated":
            d["n_samples"] = len(self.samples)
        return d


def parse_boundary(spec: str, dim: int = 1) -> BoundaryData:
    """Parse ``heaviside``, ``gaussian:w``, ``box:a,b`` or a CSV path."""
    name, _, arg = spec.partition(":")
    if name == "heaviside" and not arg:
        return BoundaryData.heaviside()
    if name == "gaussian":
        return BoundaryData.gaussian(float(arg) if arg else 1.0, dim=dim)
    if name == "box":
        a, b = (float(v) for v in arg.split(",")) if arg else (-1.0, 1.0)
        return BoundaryData.box(a, b, dim=dim)
    return load_tabulated(spec)


def load_tabulated(path) -> BoundaryData:
    """Read two-column ``x,f`` CSV data (an optional header line is skipped)."""
    try:
        arr = np.loadtxt(path, delimiter=",", ndmin=2)
    except ValueError:
        arr = np.loadtxt(path, delimiter=",", ndmin=2, skiprows=1)
    if arr.shape[1] != 2:
        raise ValueError(f"{path}: expected two columns x,f")
    return BoundaryData.tabulated(arr[:, 0], arr[:, 1])


# --------------------------------------------------------------------------
# 1-D cosine / sine transforms of the profile


def _series_moments(theta):
    """``int_0^1 exp(i theta t) dt`` and ``int_0^1 t exp(i theta t) dt``."""
    theta = np.asarray(theta, dtype=float)
    small = np.abs(theta) < 0.5
    it = 1j * np.where(small, 1.0, theta)
    e = np.exp(it)
    e0 = (e - 1) / it
    e1 = e / it - (e - 1) / it**2
    if np.any(small):
        ts = 1j * theta[small]
        s0 = np.zeros(ts.shape, complex)
        s1 = np.zeros(ts.shape, complex)
        term = np.ones(ts.shape, complex)
        for k in range(25):
            s0 += term / (k + 1)
            s1 += term / (k + 2)
            term = term * ts / (k + 1)
        e0 = np.where(small, 0, e0)
        e1 = np.where(small, 0, e1)
        e0[small] = s0
        e1[small] = s1
    return e0, e1


def _tabulated_transform(data: BoundaryData, w):
    xs = np.asarray(data.abscissae)
    fs = np.asarray(data.samples)
    x0, dx = xs[:-1], np.diff(xs)
    f0, df = fs[:-1], np.diff(fs)
    w = np.atleast_1d(np.asarray(w, dtype=float))
    theta = w[:, None] * dx[None, :]
    e0, e1 = _series_moments(theta)
    seg = dx * np.exp(1j * w[:, None] * x0) * (f0 * e0 + df * e1)
    total = seg.sum(axis=1)
    return total.real, total.imag


def profile_transforms(data: BoundaryData, w, cfg: QuadConfig = QuadConfig()):
    """``(int f cos(w x) dx, int f sin(w x) dx)`` of the 1-D profile.

    Heaviside uses the Abel-regularized values ``(0, 1/w)``; its
    delta-function part at ``w = 0`` is carried by :attr:`BoundaryData.dc_level`.
    """
    w = np.atleast_1d(np.asarray(w, dtype=float))
    if data.kind == "heaviside":
        return np.zeros_like(w), 1.0 / w
    if data.kind == "box":
        mid, half = (data.a + data.b) / 2, (data.b - data.a) / 2
        core = 2 * half * np.sinc(w * half / pi)
        return np.cos(w * mid) * core, np.sin(w * mid) * core
    if data.kind == "tabulated":
        data.check_integrable(cfg)
        return _tabulated_transform(data, w)
    cut = GAUSS_CUTOFF * data.width

    def one(wk):
        # even profile: sine transform vanishes identically
        val, err = _quad(data.profile, 0.0, cut, replace(cfg, abs_tol=cfg.abs_tol / 2),
                         weight="cos", wvar=wk)
        return _check_tol(2 * val, 2 * err, cfg, f"cosine transform at w={wk:.6g}")

    return np.array(pmap(one, w)), np.zeros_like(w)


# --------------------------------------------------------------------------
# Fourier route


@dataclass(frozen=True)
class FrequencyGrid:
    nodes: np.ndarray
    weights: np.ndarray
    wmax: float

    @property
    def size(self) -> int:
        return int(self.nodes.size)


def frequency_grid(wmax: float, cfg: QuadConfig = QuadConfig()) -> FrequencyGrid:
    """Composite Gauss-Legendre rule on ``(0, wmax]`` with geometric panels."""
    if not wmax > 0:
        raise ValueError("wmax must be positive")
    if cfg.panels < 2:
        raise ValueError("need at least two frequency panels")
    lo = cfg.w_lo_ratio * wmax
    edges = np.concatenate([[0.0], np.geomspace(lo, wmax, cfg.panels)])
    gx, gw = np.polynomial.legendre.leggauss(cfg.order)
    left, right = edges[:-1, None], edges[1:, None]
    nodes = (0.5 * (right - left) * gx + 0.5 * (right + left)).ravel()
    weights = (0.5 * (right - left) * gw).ravel()
    return FrequencyGrid(nodes, weights, float(wmax))


def _tensor_norm(nodes, dim):
    grids = np.meshgrid(*([nodes] * dim), indexing="ij")
    return np.sqrt(sum(g**2 for g in grids))


def fourier_coefficients(f: BoundaryData, wgrid: FrequencyGrid, L: float = 0.0,
                         cfg: QuadConfig = QuadConfig()):
    """Coefficients ``A(w), B(w)`` on the tensor frequency grid.

    ``A(w) = exp(|w| L) pi^-(m-1) int f(x) prod cos(w_i x_i) dx`` and ``B``
    likewise with sines. Shape is ``(N,) * (m-1)``. Values may overflow to
    ``inf`` when ``wmax * L`` is large; reconstruction does not use them.
    """
    if L < 0:
        raise DomainError("boundary offset L must be >= 0")
    c, s = profile_transforms(f, wgrid.nodes, cfg)
    a_axis, b_axis = c / pi, s / pi
    A, B = a_axis, b_axis
    for _ in range(f.dim - 1):
        A = np.multiply.outer(A, a_axis)
        B = np.multiply.outer(B, b_axis)
    with np.errstate(over="ignore"):
        growth = np.exp(_tensor_norm(wgrid.nodes, f.dim) * L)
    return growth * A, growth * B


@dataclass
class HalfspaceSolution:
    """Quadrature representation of ``u`` on ``x_m > L``.

    ``a_axis``/``b_axis`` hold the per-axis coefficients (cosine and sine
    transforms divided by pi) at the frequency nodes; the full tensor
    coefficients are :attr:`Acoef`/:attr:`Bcoef`.
    """

    data: BoundaryData
    m: int
    n: int
    L: float
    wgrid: FrequencyGrid
    a_axis: np.ndarray
    b_axis: np.ndarray
    dc: float = 0.0
    x_m_min: float | None = None
    chunk: int = 256

    @property
    def Acoef(self):
        return self._tensor_coef(self.a_axis)

    @property
    def Bcoef(self):
        return self._tensor_coef(self.b_axis)

    def _tensor_coef(self, axis):
        out = axis
        for _ in range(self.m - 2):
            out = np.multiply.outer(out, axis)
        with np.errstate(over="ignore"):
            return np.exp(self.decay_rates() * self.L) * out

    def decay_rates(self):
        return _tensor_norm(self.wgrid.nodes, self.m - 1)

    def fhat_norm(self) -> float:
        return float(np.max(np.abs(self.a_axis) + np.abs(self.b_axis))) ** (self.m - 1)

    def truncation_bound(self, x_m) -> float:
        gap = float(np.min(np.asarray(x_m, dtype=float))) - self.L
        return float(np.exp(-self.wgrid.wmax * gap) * self.fhat_norm())

    def reconstruct(self, x, x_m):
        """``u`` at boundary coordinates ``x`` (``(P, m-1)`` or ``(m-1,)``) and height ``x_m``."""
        d = self.m - 1
        x = np.asarray(x, dtype=float)
        single = x.ndim <= 1 and np.ndim(x_m) == 0
        x = x.reshape(-1, d)
        y = np.broadcast_to(np.asarray(x_m, dtype=float), (x.shape[0],)).copy()
        if np.any(y <= self.L):
            raise DomainError(f"reconstruction needs x_m > L={self.L}, got min {y.min()}")
        w, wt = self.wgrid.nodes, self.wgrid.weights
        out = np.empty(x.shape[0])
        rates = self.decay_rates()
        for start in range(0, x.shape[0], self.chunk):
            sl = slice(start, start + self.chunk)
            # per-axis weighted factors: (P, N)
            facs = [wt * (self.a_axis * np.cos(np.multiply.outer(x[sl, i], w))
                          + self.b_axis * np.sin(np.multiply.outer(x[sl, i], w)))
                    for i in range(d)]
            prod = facs[0]
            for fct in facs[1:]:
                prod = prod[..., None] * fct.reshape(fct.shape[:1] + (1,) * (prod.ndim - 1)
                                                     + fct.shape[1:])
            decay = np.exp(-np.multiply.outer(y[sl] - self.L, rates))
            out[sl] = self.dc + (prod * decay).reshape(prod.shape[0], -1).sum(axis=1)
        return float(out[0]) if single else out

    def __call__(self, points):
        pts = np.atleast_2d(np.asarray(points, dtype=float))
        return self.reconstruct(pts[:, :-1], pts[:, -1])

    def diagnostics(self, x_m=None) -> dict:
        out = {"route": "fourier", "m": self.m, "n": self.n, "L": self.L,
               "wmax": self.wgrid.wmax, "nodes_per_axis": self.wgrid.size,
               "total_nodes": self.wgrid.size ** (self.m - 1),
               "fhat_norm": self.fhat_norm(), "dc": self.dc,
               "solution": "minimal single decaying term per frequency"}
        ref = x_m if x_m is not None else self.x_m_min
        if ref is not None:
            out["truncation_bound"] = self.truncation_bound(ref)
        return out


def solve_halfspace(f: BoundaryData, m: int = 2, n: int = 1, L: float = 0.0,
                    x_m_min: float | None = None, cfg: QuadConfig = QuadConfig()
                    ) -> HalfspaceSolution:
    """Build the Fourier representation for evaluation heights ``>= x_m_min``."""
    if m < 2:
        raise ValueError("half-space problems need m >= 2")
    if m - 1 > 3:
        raise ValueError("Fourier reconstruction supports m - 1 <= 3")
    if n < 1:
        raise ValueError("operator power n must be >= 1")
    if f.dim != m - 1:
        raise ValueError(f"boundary data is {f.dim}-dimensional, expected {m - 1}")
    if L < 0:
        raise DomainError("boundary offset L must be >= 0")
    if x_m_min is None and cfg.wmax is None:
        x_m_min = L + 0.1
    wgrid = frequency_grid(cfg.resolve_wmax(x_m_min, L) if cfg.wmax is None else cfg.wmax, cfg)
    c, s = profile_transforms(f, wgrid.nodes, cfg)
    return HalfspaceSolution(f, m, n, float(L), wgrid, c / pi, s / pi, f.dc_level, x_m_min)


def reconstruct(hs: HalfspaceSolution, x, x_m):
    return hs.reconstruct(x, x_m)


# --------------------------------------------------------------------------
# Poisson kernel route (m = 2)


def poisson_kernel_eval(x, y):
    """``y / (pi (x^2 + y^2))`` for ``y > 0``."""
    y = np.asarray(y, dtype=float)
    if np.any(y <= 0):
        raise DomainError("Poisson kernel needs y > 0")
    x = np.asarray(x, dtype=float)
    val = y / (pi * (x * x + y * y))
    return float(val) if val.ndim == 0 else val


class PoissonKernel:
    """Half-plane Poisson kernel as a callable object."""

    def __call__(self, x, y):
        return poisson_kernel_eval(x, y)

    @staticmethod
    def mass(y: float, cfg: QuadConfig = QuadConfig()) -> float:
        """Numerical ``int P(x, y) dx`` over the real line."""
        if not y > 0:
            raise DomainError("Poisson kernel needs y > 0")
        val, err = _quad(lambda t: poisson_kernel_eval(t, y), 0.0, np.inf,
                         replace(cfg, abs_tol=cfg.abs_tol / 2))
        return _check_tol(2 * val, 2 * err, cfg, "kernel mass")


def heaviside_closed_form(x, y):
    """``1/2 + arctan(x/y)/pi``, the Poisson integral of the unit step."""
    y = np.asarray(y, dtype=float)
    if np.any(y <= 0):
        raise DomainError("closed form needs y > 0")
    val = 0.5 + np.arctan(np.asarray(x, dtype=float) / y) / pi
    return float(val) if np.ndim(val) == 0 else val


def _kernel_mass(x, y, lo, hi):
    """Closed-form ``int_lo^hi P(x - z, y) dz``."""
    return (np.arctan((hi - x) / y) - np.arctan((lo - x) / y)) / pi


def _indicator_convolution(x, y, lo, hi, cfg):
    """Kernel integral over ``[lo, hi]``: adaptive quadrature near the peak
    ``|z - x| <= 1e3 y``, closed-form tails elsewhere."""
    reach = 1e3 * y
    core_lo, core_hi = max(lo, x - reach), min(hi, x + reach)
    if core_lo >= core_hi:
        return _kernel_mass(x, y, lo, hi), 0.0
    pts = [x] if core_lo < x < core_hi else None
    val, err = _quad(lambda z: poisson_kernel_eval(x - z, y), core_lo, core_hi, cfg, points=pts)
    if lo < core_lo:
        val += _kernel_mass(x, y, lo, core_lo)
    if core_hi < hi:
        val += _kernel_mass(x, y, core_hi, hi)
    return val, err


def _quad(func, lo, hi, cfg, **kw):
    with warnings.catch_warnings():
        # convergence is judged from the returned error estimate
        warnings.simplefilter("ignore", integrate.IntegrationWarning)
        return integrate.quad(func, lo, hi, epsabs=cfg.abs_tol, epsrel=0.0, limit=cfg.limit, **kw)


def _convolve_one(f: BoundaryData, x: float, y: float, cfg: QuadConfig) -> float:
    if f.kind == "heaviside":
        val, err = _indicator_convolution(x, y, 0.0, np.inf, cfg)
    elif f.kind == "box":
        val, err = _indicator_convolution(x, y, f.a, f.b, cfg)
    elif f.kind == "gaussian":
        cut = GAUSS_CUTOFF * f.width
        pts = [x] if -cut < x < cut else None
        val, err = _quad(lambda z: f.profile(z) * poisson_kernel_eval(x - z, y),
                         -cut, cut, cfg, points=pts)
    else:
        f.check_integrable(cfg)
        xs, fs = np.asarray(f.abscissae), np.asarray(f.samples)
        # exact integral of the piecewise-linear profile against the kernel
        t0, t1 = xs[:-1] - x, xs[1:] - x
        slope = np.diff(fs) / np.diff(xs)
        base = fs[:-1] - slope * t0
        atan = (np.arctan(t1 / y) - np.arctan(t0 / y)) / pi
        logs = y / (2 * pi) * np.log((t1 * t1 + y * y) / (t0 * t0 + y * y))
        return float(np.sum(base * atan + slope * logs))
    return _check_tol(float(val), err, cfg, f"{f.kind} convolution at ({x:.6g}, {y:.6g})")


def convolve_halfplane(f: BoundaryData, x, y, cfg: QuadConfig = QuadConfig(), L: float = 0.0):
    """Poisson-kernel solution at ``(x, y)`` with the boundary at ``y = L``."""
    if f.dim != 1:
        raise ValueError("convolution route is implemented for m = 2 only")
    single = np.ndim(x) == 0 and np.ndim(y) == 0
    xs, ys = np.broadcast_arrays(np.asarray(x, dtype=float), np.asarray(y, dtype=float))
    if np.any(ys <= L):
        raise DomainError(f"convolution needs y > L={L}")
    vals = pmap(lambda p: _convolve_one(f, p[0], p[1] - L, cfg),
                list(zip(xs.ravel().tolist(), ys.ravel().tolist())))
    out = np.array(vals).reshape(xs.shape)
    return float(out) if single else out


@dataclass
class CrossValidationReport:
    passed: bool
    max_diff: float
    tol: float
    points: np.ndarray
    fourier: np.ndarray
    convolution: np.ndarray
    closed_form: np.ndarray | None = None
    diagnostics: dict = field(default_factory=dict)

    @property
    def max_closed_form_diff(self) -> float | None:
        if self.closed_form is None:
            return None
        return float(max(np.max(np.abs(self.fourier - self.closed_form)),
                         np.max(np.abs(self.convolution - self.closed_form))))

    def to_dict(self) -> dict:
        out = {"passed": self.passed, "max_diff": self.max_diff, "tol": self.tol,
               "points": self.points.tolist(), "fourier": self.fourier.tolist(),
               "convolution": self.convolution.tolist(), "diagnostics": self.diagnostics}
        if self.closed_form is not None:
            out["closed_form"] = self.closed_form.tolist()
            out["max_closed_form_diff"] = self.max_closed_form_diff
        return out


def cross_validate(f: BoundaryData, points, tol: float = 1e-4,
                   cfg: QuadConfig = QuadConfig(), L: float = 0.0) -> CrossValidationReport:
    """Compare the Fourier and convolution routes at ``(x, y)`` points (m = 2, n = 1).

    For heaviside data both routes are also compared with the closed form,
    and that difference counts toward the verdict.
    """
    pts = np.atleast_2d(np.asarray(points, dtype=float))
    hs = solve_halfspace(f, m=2, n=1, L=L, x_m_min=float(pts[:, 1].min()), cfg=cfg)
    uf = hs.reconstruct(pts[:, :1], pts[:, 1])
    uc = convolve_halfplane(f, pts[:, 0], pts[:, 1], cfg, L=L)
    closed = heaviside_closed_form(pts[:, 0], pts[:, 1] - L) if f.kind == "heaviside" else None
    diff = float(np.max(np.abs(uf - uc)))
    rep = CrossValidationReport(diff <= tol, diff, tol, pts, uf, uc,
                                None if closed is None else np.atleast_1d(closed),
                                hs.diagnostics(pts[:, 1].min()))
    if closed is not None:
        rep.passed = rep.passed and rep.max_closed_form_diff <= tol
    return rep
