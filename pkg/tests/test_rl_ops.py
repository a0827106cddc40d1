import cmath
import math

import numpy as np
import pytest

from fracline import families
from fracline.errors import (InvalidArgumentError, NonzeroMeanError, SingularSymbolError,
                             UnsupportedInputError)
from fracline.rl_ops import (LEFT, RIGHT, FracOrder, GLScheme, apply_rl, dilate, dilate_by_regridding,
                             gl_derivative, gl_weights, periodic_gl_weights, rl_symbol, translate,
                             weak_pairing_residual)
from fracline.spectral_core import SampledFunction, build_grid, l2_norm, read_csv, write_csv


def rel(a, b):
    return l2_norm(a - b) / l2_norm(b)


# -- symbol -------------------------------------------------------------------

def test_symbol_half_order():
    z = rl_symbol(FracOrder(0.5, LEFT), 1 / (2 * math.pi))
    assert abs(z - cmath.exp(1j * math.pi / 4)) <= 1e-15


def test_symbol_right_is_conjugate():
    for s in (0.3, 1.5, -0.7):
        for xi in (-2.0, 0.1, 3.0):
            assert rl_symbol(FracOrder(s, RIGHT), xi) == pytest.approx(
                np.conj(rl_symbol(FracOrder(s, LEFT), xi)), rel=1e-15)


@pytest.mark.parametrize("side", [LEFT, RIGHT])
def test_symbol_at_origin(side):
    assert rl_symbol(FracOrder(1.5, side), 0.0) == 0
    assert rl_symbol(FracOrder(0, side), 0.0) == 1
    with pytest.raises(SingularSymbolError):
        rl_symbol(FracOrder(-0.5, side), 0.0)


def test_symbol_first_order_is_exact():
    xi = np.linspace(-5, 5, 101)
    np.testing.assert_array_equal(rl_symbol(FracOrder(1, LEFT), xi), 2j * np.pi * xi)
    np.testing.assert_array_equal(rl_symbol(FracOrder(1, RIGHT), xi), -2j * np.pi * xi)


def test_symbol_principal_branch(rng):
    # against complex powers of +-2 pi i xi taken on the principal branch
    for _ in range(200):
        s = rng.uniform(-1.9, 1.9)
        xi = rng.uniform(-5, 5)
        assert rl_symbol(FracOrder(s, LEFT), xi) == pytest.approx((2j * math.pi * xi) ** s, rel=1e-13)
        assert rl_symbol(FracOrder(s, RIGHT), xi) == pytest.approx((-2j * math.pi * xi) ** s, rel=1e-13)


def test_symbol_semigroup_and_inverse(rng):
    for side in (LEFT, RIGHT):
        a, b = rng.uniform(-2, 2, 2000), rng.uniform(-2, 2, 2000)
        xi = rng.uniform(0.01, 50, 2000) * rng.choice([-1, 1], 2000)
        for s1, s2, x in zip(a, b, xi):
            ref = rl_symbol(FracOrder(s1 + s2, side), x)
            prod = rl_symbol(FracOrder(s1, side), x) * rl_symbol(FracOrder(s2, side), x)
            assert abs(prod - ref) <= 1e-13 * abs(ref)
            assert abs(rl_symbol(FracOrder(s1, side), x) * rl_symbol(FracOrder(-s1, side), x) - 1) <= 1e-13


# -- applied operators --------------------------------------------------------

def test_order_zero_is_identity(hermite):
    assert apply_rl(hermite, 0.0) is hermite


def test_second_derivative_of_gaussian(grid, gauss):
    exact = SampledFunction.from_callable(grid, families.Gaussian().second_derivative)
    assert rel(apply_rl(gauss, FracOrder(2, LEFT)), exact) <= 1e-8
    assert rel(apply_rl(gauss, FracOrder(2, RIGHT)), exact) <= 1e-8


def test_first_derivative_sides(grid, gauss):
    exact = SampledFunction.from_callable(grid, families.Gaussian().derivative)
    assert rel(apply_rl(gauss, 1.0, LEFT), exact) <= 1e-10
    assert rel(apply_rl(gauss, 1.0, RIGHT), -exact) <= 1e-10


def test_half_derivative_composes(gauss):
    twice = apply_rl(apply_rl(gauss, 0.5), 0.5)
    assert rel(twice, apply_rl(gauss, 1.0)) <= 1e-12


@pytest.mark.parametrize("side", [LEFT, RIGHT])
def test_integral_semigroup_and_inverse(hermite, side):
    two = apply_rl(apply_rl(hermite, FracOrder(-0.3, side)), FracOrder(-0.4, side))
    assert rel(two, apply_rl(hermite, FracOrder(-0.7, side))) <= 1e-11
    back = apply_rl(apply_rl(hermite, FracOrder(-0.6, side)), FracOrder(0.6, side))
    assert rel(back, hermite) <= 1e-11


def test_integral_needs_zero_mean(gauss):
    with pytest.raises(NonzeroMeanError):
        apply_rl(gauss, -0.5)


def test_first_integral_matches_cumulative_sum(grid, hermite):
    # D^{-1} of the zero-mean x e^{-pi x^2} is -e^{-pi x^2}/(2 pi) up to its (zeroed) mean
    got = apply_rl(hermite, -1.0)
    g = np.exp(-math.pi * grid.nodes ** 2)
    scale = families.HermiteGaussian(1, math.pi)(np.array([1.0]))[0] / (math.exp(-math.pi))
    exact = -scale * g / (2 * math.pi)
    exact -= exact.mean()
    assert np.max(np.abs(got.values - exact)) <= 1e-12 * np.max(np.abs(exact))


# -- Grunwald-Letnikov --------------------------------------------------------

def test_gl_weights_binomial():
    from scipy.special import binom
    w = gl_weights(0.7, 12)
    k = np.arange(12)
    np.testing.assert_allclose(w, (-1) ** k * binom(0.7, k), rtol=1e-13, atol=1e-16)


def test_periodic_weights_sum_to_zero():
    # sum_k w_k = (1 - 1)^mu = 0 for mu > 0
    for mu in (0.4, 0.7, 1.3):
        assert abs(periodic_gl_weights(mu, 256).sum()) <= 1e-10


def test_periodic_weights_against_long_sum():
    n = 64
    mu = 0.7
    long = gl_weights(mu, 4000 * n).reshape(4000, n).sum(axis=0)
    assert np.max(np.abs(periodic_gl_weights(mu, n) - long)) <= 1e-6


def test_gl_first_order_is_backward_difference(small_grid, rng):
    f = SampledFunction(small_grid, rng.standard_normal(small_grid.n_points))
    got = gl_derivative(f, 1.0, LEFT, GLScheme(shift=0))
    expected = (f.values - np.roll(f.values, 1)) / small_grid.spacing
    np.testing.assert_allclose(got.values, expected, rtol=1e-10, atol=1e-10)
    right = gl_derivative(f, 1.0, RIGHT, GLScheme(shift=0))
    np.testing.assert_allclose(right.values, (f.values - np.roll(f.values, -1)) / small_grid.spacing,
                               rtol=1e-10, atol=1e-10)


def test_gl_zero_function(small_grid):
    assert np.all(gl_derivative(SampledFunction.zeros(small_grid), 0.6).values == 0)


def test_gl_refinement_ratio():
    errs = []
    for n in (1024, 2048):
        g = build_grid(n, 16.0)
        fine = families.sample(build_grid(4 * n, 16.0), "gaussian")
        ref = SampledFunction(g, apply_rl(fine, 0.7).values[::4])
        errs.append(l2_norm(gl_derivative(families.sample(g, "gaussian"), 0.7) - ref))
    assert 1.7 <= errs[0] / errs[1] <= 2.3


def test_gl_truncated_zero_extension_close(grid, gauss):
    full = gl_derivative(gauss, 1.3)
    trunc = gl_derivative(gauss, 1.3, scheme=GLScheme(shift=1, periodic=False))
    assert rel(trunc, full) <= 1e-3


@pytest.mark.parametrize("mu", [0.0, -0.5, 2.5])
def test_gl_rejects_order(gauss, mu):
    with pytest.raises(InvalidArgumentError):
        gl_derivative(gauss, mu)


# -- translation and dilation -------------------------------------------------

def test_translate_and_dilate_identity(gauss):
    np.testing.assert_array_equal(translate(gauss, 0).values, gauss.values)
    assert dilate(gauss, 1.0) is gauss


def test_translate_matches_shifted_family(grid, gauss):
    moved = translate(gauss, 128)
    exact = families.sample(grid, families.Gaussian(c=1.0))
    np.testing.assert_allclose(moved.values, exact.values, atol=1e-15)
    np.testing.assert_allclose(moved.family(grid.nodes), exact.values, atol=1e-15)


@pytest.mark.parametrize("order", [0.5, 1.3])
@pytest.mark.parametrize("steps", [-37, 128])
def test_translation_commutes(gauss, order, steps):
    a = translate(apply_rl(gauss, order), steps)
    b = apply_rl(translate(gauss, steps), order)
    assert rel(a, b) <= 1e-9


def test_dilate_matches_family(grid, gauss):
    np.testing.assert_allclose(dilate(gauss, 2.0).values, np.exp(-4 * math.pi * grid.nodes ** 2), atol=1e-16)


def test_dilate_by_regridding(grid):
    wide = families.sample(build_grid(grid.n_points, 32.0), "gaussian")
    d = dilate_by_regridding(wide, 2.0)
    assert d.grid == grid
    np.testing.assert_allclose(d.values, np.exp(-4 * math.pi * grid.nodes ** 2), atol=1e-16)


def test_dilate_sampled_data_unsupported(tmp_path, gauss):
    path = tmp_path / "g.csv"
    write_csv(gauss, path)
    with pytest.raises(UnsupportedInputError):
        dilate(read_csv(path), 2.0)
    with pytest.raises(InvalidArgumentError):
        dilate(gauss, 0.0)


# -- weak pairing ---------------------------------------------------------------

def _direct_dft_derivative(values, grid, s, side):
    # plain O(N^2) DFT sums, independent of the FFT code path
    x, xi = grid.nodes, grid.frequencies
    e = np.exp(-2j * np.pi * np.outer(xi, x))
    c = grid.spacing * e @ values
    sym = rl_symbol(FracOrder(s, side), xi)
    sym[0] = sym[0].real
    return np.real(np.conj(e).T @ (sym * c)) / grid.length


def test_weak_pairing_gaussian(gauss):
    assert weak_pairing_residual(gauss, gauss, 0.5) <= 1e-10


def test_weak_pairing_direct_quadrature():
    g = build_grid(128, 6.0)
    v = families.sample(g, "gaussian").values
    psi = families.sample(g, "hermite_gaussian(1,pi)").values
    lhs = g.spacing * np.dot(v, _direct_dft_derivative(psi, g, 0.5, RIGHT))
    rhs = g.spacing * np.dot(_direct_dft_derivative(v, g, 0.5, LEFT), psi)
    assert abs(lhs - rhs) <= 1e-12
    got = weak_pairing_residual(families.sample(g, "gaussian"), families.sample(g, "hermite_gaussian(1,pi)"), 0.5)
    ref = abs(lhs - rhs) / (np.sqrt(g.spacing * np.dot(v, v)) * np.sqrt(g.spacing * np.dot(psi, psi)))
    assert got <= 1e-12 and ref <= 1e-12


def test_weak_pairing_limits(grid, gauss, hermite):
    assert weak_pairing_residual(gauss, hermite, 1e-12) <= 1e-14
    assert weak_pairing_residual(SampledFunction.zeros(grid), hermite, 0.5) == 0.0


def test_weak_pairing_integral_adjoint(hermite):
    shifted = translate(hermite, 200)
    for mu in np.arange(0.1, 1.0, 0.1):
        assert weak_pairing_residual(hermite, shifted, -mu) <= 1e-10
