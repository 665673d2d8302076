import numpy as np
import pytest

from polyharm.grid import Grid
from polyharm.modes import ExpBasisFactor, Oscillatory
from polyharm.oracle import (DEFAULT_H_LADDER, SamplerRangeError, TabulatedField,
                             convergence_study, fd_laplacian, fd_polyharmonic,
                             observed_order, stencil_weights)
from polyharm.separable import assemble


def x1_squared(p):
    return p[:, 0] ** 2


@pytest.fixture
def biharmonic():
    return assemble([Oscillatory(1.0)], ExpBasisFactor(-1.0, 2, q=(0.0, 1.0)), 2)


@pytest.fixture
def wrong_power():
    return assemble([Oscillatory(1.0)], ExpBasisFactor.overcounted(-1.0, 1, q=(0.0, 1.0)), 1)


@pytest.mark.parametrize("h", [0.5, 0.25, 0.125])
def test_laplacian_quadratic_exact(h):
    # powers of two keep every stencil operation exact
    assert fd_laplacian(x1_squared, [0.5, -1.0], h) == 2.0


def test_laplacian_quadratic_any_h():
    assert fd_laplacian(x1_squared, [0.3, 0.7], 0.013) == pytest.approx(2.0, rel=1e-9)


def test_laplacian_linear():
    assert fd_laplacian(lambda p: p[:, 0], [0.5, 0.25], 0.125) == 0.0


def test_laplacian_harmonic():
    sol = assemble([Oscillatory(1.0)], ExpBasisFactor(-1.0, 1, q=(1.0,)), 1)
    assert abs(fd_laplacian(sol, [0.5, 0.5], 1e-3)) <= 1e-5


def test_biharmonic_fd(biharmonic):
    assert abs(fd_polyharmonic(biharmonic, [0.7, 1.3], 2, 1e-2)) <= 1e-2


def test_quartic_fd_exact():
    assert fd_polyharmonic(lambda p: p[:, 0] ** 4, [0.5, 0.25], 2, 0.25) == 24.0
    assert fd_polyharmonic(lambda p: p[:, 0] ** 4, [0.3, 0.1], 2, 0.07) == pytest.approx(24, rel=1e-9)


def test_n1_reduces_to_laplacian(biharmonic):
    p = [0.2, 0.9]
    assert fd_polyharmonic(biharmonic, p, 1, 0.05) == pytest.approx(
        fd_laplacian(biharmonic, p, 0.05), rel=1e-13)


def brute_force_weights(m, n):
    # convolve the 1-D [1, -2, 1] stencil along each axis, then compose n times
    lap = np.zeros((3,) * m)
    centre = (1,) * m
    for ax in range(m):
        for off, w in ((-1, 1.0), (0, -2.0), (1, 1.0)):
            idx = list(centre)
            idx[ax] += off
            lap[tuple(idx)] += w
    out = np.ones((1,) * m)
    for _ in range(n):
        new = np.zeros(tuple(s + 2 for s in out.shape))
        for idx in np.ndindex(*lap.shape):
            sl = tuple(slice(i, i + s) for i, s in zip(idx, out.shape))
            new[sl] += lap[idx] * out
        out = new
    return out


@pytest.mark.parametrize("m, n", [(2, 2), (3, 2), (2, 3)])
def test_stencil_weights_against_brute_force(m, n):
    np.testing.assert_array_equal(stencil_weights(m, n), brute_force_weights(m, n))


def test_stencil_symmetry():
    w = stencil_weights(2, 2)
    np.testing.assert_array_equal(w, w[::-1, :])
    np.testing.assert_array_equal(w, w[:, ::-1])
    np.testing.assert_array_equal(w, w.T)
    assert w.sum() == 0


def test_convergence_biharmonic(biharmonic):
    res = convergence_study(biharmonic, [0.7, 1.3], 2, DEFAULT_H_LADDER)
    assert res.status == "pass"
    assert res.order == pytest.approx(2.0, abs=0.3)


def test_convergence_polynomial_inconclusive():
    res = convergence_study(lambda p: p[:, 0] ** 2 - p[:, 1] ** 2, [0.5, 0.5], 1,
                            DEFAULT_H_LADDER)
    assert res.status == "inconclusive" and res.order is None
    # binary step sizes keep the n = 2 stencil free of roundoff
    res = convergence_study(lambda p: p[:, 0] ** 3 * p[:, 1], [0.5, 0.5], 2, [0.5, 0.25, 0.125])
    assert res.status == "inconclusive"


def test_convergence_invalid_solution(wrong_power):
    point = [0.7, 1.3]
    res = convergence_study(wrong_power, point, 1, DEFAULT_H_LADDER)
    exact = wrong_power.apply_polyharmonic_exact(point)
    assert res.order == pytest.approx(0.0, abs=0.05)
    assert res.status == "fail"
    np.testing.assert_allclose(res.values, exact, atol=5e-3)
    shifted = convergence_study(wrong_power, point, 1, DEFAULT_H_LADDER, exact=exact)
    assert shifted.order == pytest.approx(2.0, abs=0.3)


def test_convergence_argument_checks(biharmonic):
    with pytest.raises(ValueError):
        convergence_study(biharmonic, [0, 1], 2, [0.1, 0.05])
    with pytest.raises(ValueError):
        convergence_study(biharmonic, [0, 1], 2, [0.05, 0.1, 0.2])


def test_observed_order_exact_power():
    h = np.array([0.1, 0.05, 0.025])
    assert observed_order(h, 3 * h**2) == pytest.approx(2.0)


def test_tabulated_field_range():
    g = Grid((0.0, 0.0), (0.1, 0.1), (11, 11))
    pts = g.points()
    tab = TabulatedField(g, pts[:, 0] + 2 * pts[:, 1])
    assert tab([[0.55, 0.35]])[0] == pytest.approx(1.25)
    with pytest.raises(SamplerRangeError):
        tab([[1.5, 0.0]])
    # linear data is FD-exact up to roundoff

    assert fd_laplacian(tab, [0.5, 0.5], 0.1) == pytest.approx(0.0, abs=1e-12)
    with pytest.raises(SamplerRangeError):
        fd_polyharmonic(tab, [0.05, 0.5], 1, 0.1)
