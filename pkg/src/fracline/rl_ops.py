"""Riemann-Liouville fractional derivatives and integrals on the real line.

Operators of real order ``s`` act as Fourier multipliers: ``s > 0`` is a
derivative, ``s < 0`` an integral of order ``|s|`` and ``s = 0`` the identity.
The left operator (lower limit -inf) has symbol ``(2 pi i xi)^s`` and the right
operator (upper limit +inf) ``(-2 pi i xi)^s``, with the principal branch

    (+-i xi)^s = |xi|^s exp(+-i s pi sign(xi) / 2).

A Grunwald-Letnikov finite-difference discretization is provided as an
independent check on the spectral route.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Optional, Union

import numpy as np
from scipy.signal import fftconvolve
from scipy.special import rgamma, zeta

from .errors import InvalidArgumentError, NonzeroMeanError, SingularSymbolError, UnsupportedInputError
from .spectral_core import (GridSpec, SampledFunction, forward_transform, inner_product,
                            inverse_transform, l2_norm)

# |f^(0)| allowed before a fractional integral, relative to max |f^|
ZERO_MEAN_TOL = 1e-10


class Side(enum.Enum):
    LEFT = "left"
    RIGHT = "right"

    @property
    def sign(self) -> int:
        return 1 if self is Side.LEFT else -1

    @property
    def opposite(self) -> "Side":
        return Side.RIGHT if self is Side.LEFT else Side.LEFT


LEFT = Side.LEFT
RIGHT = Side.RIGHT


@dataclass(frozen=True)
class FracOrder:
    order: float
    side: Side = Side.LEFT

    def __post_init__(self):
        if not math.isfinite(self.order):
            raise InvalidArgumentError(f"order must be finite, got {self.order!r}")
        if not isinstance(self.side, Side):
            object.__setattr__(self, "side", Side(self.side))


@dataclass(frozen=True)
class GLScheme:
    """Grunwald-Letnikov options.

    shift:
        0 for the standard scheme, 1 for the shifted one.
    truncation:
        Number of binomial weights kept.  ``None`` keeps all of them: on the
        periodic box this folds the whole infinite weight sequence onto the
        grid, otherwise it keeps ``n_points`` weights (enough to reach every
        node of the box).
    periodic:
        Treat samples as one period of a periodic function (consistent with
        the spectral route).  With ``False`` the function is extended by zero.
    """

    shift: int = 0
    truncation: Optional[int] = None
    periodic: bool = True

    def __post_init__(self):
        if self.shift not in (0, 1):
            raise InvalidArgumentError(f"shift must be 0 or 1, got {self.shift!r}")
        if self.truncation is not None and self.truncation < 1:
            raise InvalidArgumentError("truncation must be >= 1")


def default_scheme(mu: float) -> GLScheme:
    # the standard scheme is unstable for orders above one
    return GLScheme(shift=1 if 1 < mu < 2 else 0)


def _phase_parts(s: float) -> tuple[float, float]:
    """cos(s pi/2), sin(s pi/2), exact when s is an integer."""
    if float(s).is_integer():
        return [(1.0, 0.0), (0.0, 1.0), (-1.0, 0.0), (0.0, -1.0)][int(s) % 4]
    return math.cos(s * math.pi / 2), math.sin(s * math.pi / 2)


def rl_symbol(ord: FracOrder, xi):
    """Fourier multiplier of the operator ``ord`` at frequency ``xi``.

    Scalar ``xi`` gives a complex number, array ``xi`` an array.  Orders
    ``s > 0`` vanish at ``xi = 0``; negative orders raise
    :class:`SingularSymbolError` there.
    """
    s = float(ord.order)
    xi_arr = np.asarray(xi, dtype=float)
    if s == 0:
        out = np.ones(xi_arr.shape, dtype=complex)
    else:
        if s < 0 and np.any(xi_arr == 0):
            raise SingularSymbolError(f"integral symbol of order {-s:g} is singular at xi = 0")
        t = np.abs(2 * np.pi * xi_arr)
        c, sn = _phase_parts(s)
        out = t ** s * (c + 1j * ord.side.sign * np.sign(xi_arr) * sn)
    return complex(out) if out.ndim == 0 else out


def grid_symbol(ord: FracOrder, grid: GridSpec) -> np.ndarray:
    """``rl_symbol`` on the grid frequencies, with 0 at ``xi = 0`` for integrals."""
    xi = grid.frequencies
    if ord.order < 0:
        out = np.zeros(grid.n_points, dtype=complex)
        nz = xi != 0
        out[nz] = rl_symbol(ord, xi[nz])
        return out
    return rl_symbol(ord, xi)


def _check_zero_mean(spec, order):
    c = np.abs(spec.coeffs)
    dc = spec.coeff(0)
    if abs(dc) > ZERO_MEAN_TOL * np.max(c):
        raise NonzeroMeanError(
            f"integral of order {-order:g} needs a zero-mean input; |f^(0)| = {abs(dc):.3e}")


def apply_rl(f: SampledFunction, ord: Union[FracOrder, float], side: Side = Side.LEFT) -> SampledFunction:
    """``(rl_symbol * f^)^v``.  A bare float order is taken with ``side``."""
    if not isinstance(ord, FracOrder):
        ord = FracOrder(float(ord), side)
    if ord.order == 0:
        return f
    spec = forward_transform(f)
    if ord.order < 0:
        _check_zero_mean(spec, ord.order)
    return inverse_transform(spec.multiply(grid_symbol(ord, f.grid)))


# -- Grunwald-Letnikov -----------------------------------------------------

def gl_weights(mu: float, count: int) -> np.ndarray:
    """``(-1)^k binom(mu, k)`` for ``k < count`` by the ratio recurrence."""
    k = np.arange(1, count)
    w = np.empty(count)
    w[0] = 1.0
    w[1:] = np.cumprod((k - 1 - mu) / k)
    return w


def periodic_gl_weights(mu: float, n: int, images: int = 16) -> np.ndarray:
    """All GL weights folded modulo ``n``: ``W_k = sum_{m>=0} w_{k+mn}``.

    The first ``images`` periods are summed exactly; the rest uses the
    large-index expansion ``w_j ~ j^(-1-mu)/Gamma(-mu) * (1 + mu(mu+1)/(2j))``
    summed in closed form with Hurwitz zeta functions.
    """
    w = gl_weights(mu, images * n).reshape(images, n).sum(axis=0)
    q = images + np.arange(n) / n
    tail = n ** (-1 - mu) * zeta(1 + mu, q) + 0.5 * mu * (mu + 1) * n ** (-2 - mu) * zeta(2 + mu, q)
    return w + rgamma(-mu) * tail


def _left_sum(values: np.ndarray, weights: np.ndarray, shift: int, periodic: bool) -> np.ndarray:
    """``out_j = sum_k weights_k * values_{j - k + shift}``."""
    n = len(values)
    if periodic:
        folded = np.zeros(n)
        np.add.at(folded, np.arange(len(weights)) % n, weights)
        c = np.fft.irfft(np.fft.rfft(folded) * np.fft.rfft(values), n)
        return np.roll(c, -shift)
    full = fftconvolve(values, weights)
    out = np.zeros(n)
    idx = np.arange(n) + shift
    ok = idx < len(full)
    out[ok] = full[idx[ok]]
    return out


def gl_derivative(f: SampledFunction, mu: float, side: Side = Side.LEFT,
                  scheme: Optional[GLScheme] = None) -> SampledFunction:
    """First-order Grunwald-Letnikov approximation of the order-``mu`` derivative.

    Left: ``h^-mu sum_k w_k f(x - (k - shift) h)``; right uses ``x + (k - shift) h``.
    """
    mu = float(mu)
    if not 0 < mu <= 2:
        raise InvalidArgumentError(f"mu must lie in (0, 2], got {mu}")
    scheme = scheme or default_scheme(mu)
    n = f.grid.n_points
    if scheme.truncation is not None:
        w = gl_weights(mu, scheme.truncation)
    elif scheme.periodic:
        w = periodic_gl_weights(mu, n)
    else:
        w = gl_weights(mu, n)
    vals = f.values if side is Side.LEFT else f.values[::-1]
    out = _left_sum(vals, w, scheme.shift, scheme.periodic)
    if side is Side.RIGHT:
        out = out[::-1]
    return SampledFunction(f.grid, out * f.grid.spacing ** (-mu))


# -- translation and dilation ------------------------------------------------

@dataclass(frozen=True)
class _Shifted:
    base: object
    h: float

    def __call__(self, x):
        return self.base(np.asarray(x) - self.h)


@dataclass(frozen=True)
class _Dilated:
    base: object
    kappa: float

    def __call__(self, x):
        return self.base(self.kappa * np.asarray(x))


def translate(f: SampledFunction, steps: int) -> SampledFunction:
    """``w(x - steps*h)`` as a cyclic shift of the samples."""
    steps = int(steps)
    fam = _Shifted(f.family, steps * f.grid.spacing) if f.family is not None else None
    return SampledFunction(f.grid, np.roll(f.values, steps), family=fam)


def dilate(f: SampledFunction, kappa: float) -> SampledFunction:
    """``w(kappa x)`` on the same grid, by exact re-evaluation of an analytic input."""
    if not kappa > 0:
        raise InvalidArgumentError(f"kappa must be positive, got {kappa}")
    if f.family is None:
        raise UnsupportedInputError("dilation needs an analytic input; sampled data cannot be resampled exactly")
    if kappa == 1:
        return f
    return SampledFunction.from_callable(f.grid, _Dilated(f.family, float(kappa)))


def dilate_by_regridding(f: SampledFunction, kappa: float) -> SampledFunction:
    """``w(kappa x)`` by relabelling nodes: samples on ``[-Y, Y)`` become
    samples of the dilated function on ``[-Y/kappa, Y/kappa)``.

    Works for any sampled input and is exact, including the periodic images.
    """
    if not kappa > 0:
        raise InvalidArgumentError(f"kappa must be positive, got {kappa}")
    grid = GridSpec(f.grid.n_points, f.grid.half_width / kappa)
    fam = _Dilated(f.family, float(kappa)) if f.family is not None else None
    return SampledFunction(grid, f.values, family=fam)


def weak_pairing_residual(v: SampledFunction, psi: SampledFunction, s: float,
                          side: Side = Side.LEFT, eps: float = 1e-300) -> float:
    """Normalized defect of ``(v, D^{s,opposite} psi) = (D^{s,side} v, psi)``.

    Negative ``s`` gives the adjoint relation for fractional integrals.
    """
    lhs = inner_product(v, apply_rl(psi, FracOrder(s, side.opposite)))
    rhs = inner_product(apply_rl(v, FracOrder(s, side)), psi)
    return abs(lhs - rhs) / (l2_norm(v) * l2_norm(psi) + eps)
