"""Uniform periodic discretization of a truncated real line.

The box is ``[-X, X)`` with ``N`` nodes ``x_j = -X + j*h``, ``h = 2X/N``.
Frequencies are ``xi_k = k/(2X)`` for ``k = -N/2, ..., N/2 - 1`` and are
always stored in that natural (negative-to-positive) order.

Transforms carry physical units so that discrete sums approximate the
continuous integrals of the convention ``F(w)(xi) = int exp(-2 pi i x xi) w(x) dx``::

    coeffs[k] = h * sum_j exp(-2 pi i x_j xi_k) values[j]
    values[j] = 1/(2X) * sum_k exp(+2 pi i x_j xi_k) coeffs[k]

so that ``h * sum |values|^2 == 1/(2X) * sum |coeffs|^2``.
"""
from __future__ import annotations

import io
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable, Optional, Union

import numpy as np

from .errors import GridMismatchError, InvalidArgumentError, SymmetryViolationError

# relative size of the imaginary part tolerated (and then dropped) by inverse_transform
IMAG_RESIDUE_TOL = 1e-10


@dataclass(frozen=True)
class GridSpec:
    n_points: int
    half_width: float

    def __post_init__(self):
        if isinstance(self.n_points, bool) or int(self.n_points) != self.n_points:
            raise InvalidArgumentError(f"n_points must be an integer, got {self.n_points!r}")
        n = int(self.n_points)
        if n < 8 or n % 2:
            raise InvalidArgumentError(f"n_points must be even and >= 8, got {n}")
        x = float(self.half_width)
        if not math.isfinite(x) or x <= 0:
            raise InvalidArgumentError(f"half_width must be positive, got {self.half_width!r}")
        object.__setattr__(self, "n_points", n)
        object.__setattr__(self, "half_width", x)

    @property
    def spacing(self) -> float:
        return 2.0 * self.half_width / self.n_points

    @property
    def length(self) -> float:
        return 2.0 * self.half_width

    @property
    def nodes(self) -> np.ndarray:
        return -self.half_width + self.spacing * np.arange(self.n_points)

    @property
    def wavenumbers(self) -> np.ndarray:
        """Integer indices ``k`` in natural order."""
        n = self.n_points
        return np.arange(-n // 2, n // 2)

    @property
    def frequencies(self) -> np.ndarray:
        return self.wavenumbers / self.length

    def __str__(self):
        return f"{self.n_points}x{self.half_width:g}"


def build_grid(n_points: int, half_width: float) -> GridSpec:
    """Grid of ``n_points`` nodes on ``[-half_width, half_width)``.

    >>> g = build_grid(8, 4.0)
    >>> g.spacing, g.nodes[0], g.frequencies[0]
    (1.0, -4.0, -0.5)
    """
    return GridSpec(n_points, half_width)


def parse_grid(text: str) -> GridSpec:
    """Parse ``"NxX"`` (e.g. ``"4096x16"``)."""
    try:
        n, x = text.lower().split("x")
        return build_grid(int(n), float(x))
    except ValueError as exc:
        if isinstance(exc, InvalidArgumentError):
            raise
        raise InvalidArgumentError(f"grid must look like 4096x16, got {text!r}") from None


@dataclass(frozen=True, eq=False)
class SampledFunction:
    """Real samples on a grid.

    ``family`` is the analytic callable the samples came from, if any; it is
    what makes exact dilation possible.
    """

    grid: GridSpec
    values: np.ndarray
    family: Optional[Callable[[np.ndarray], np.ndarray]] = field(default=None, repr=False)

    def __post_init__(self):
        v = np.array(self.values, dtype=float)
        if v.shape != (self.grid.n_points,):
            raise InvalidArgumentError(
                f"expected {self.grid.n_points} samples, got shape {v.shape}")
        if not np.all(np.isfinite(v)):
            raise InvalidArgumentError("samples must be finite")
        v.flags.writeable = False
        object.__setattr__(self, "values", v)

    @classmethod
    def from_callable(cls, grid: GridSpec, fn: Callable[[np.ndarray], np.ndarray]) -> "SampledFunction":
        return cls(grid, fn(grid.nodes), family=fn)

    @classmethod
    def zeros(cls, grid: GridSpec) -> "SampledFunction":
        return cls(grid, np.zeros(grid.n_points))

    @property
    def x(self) -> np.ndarray:
        return self.grid.nodes

    def with_values(self, values) -> "SampledFunction":
        return SampledFunction(self.grid, values)

    def __add__(self, other: "SampledFunction") -> "SampledFunction":
        _check_same_grid(self, other)
        return SampledFunction(self.grid, self.values + other.values)

    def __sub__(self, other: "SampledFunction") -> "SampledFunction":
        _check_same_grid(self, other)
        return SampledFunction(self.grid, self.values - other.values)

    def __mul__(self, c: float) -> "SampledFunction":
        return SampledFunction(self.grid, float(c) * self.values)

    __rmul__ = __mul__

    def __neg__(self) -> "SampledFunction":
        return SampledFunction(self.grid, -self.values)


@dataclass(frozen=True, eq=False)
class Spectrum:
    """Fourier coefficients in natural frequency order."""

    grid: GridSpec
    coeffs: np.ndarray

    def __post_init__(self):
        c = np.array(self.coeffs, dtype=complex)
        if c.shape != (self.grid.n_points,):
            raise InvalidArgumentError(
                f"expected {self.grid.n_points} coefficients, got shape {c.shape}")
        c.flags.writeable = False
        object.__setattr__(self, "coeffs", c)

    @property
    def frequencies(self) -> np.ndarray:
        return self.grid.frequencies

    def coeff(self, k: int) -> complex:
        """Coefficient at ``xi = k/(2X)``, ``-N/2 <= k < N/2``."""
        n = self.grid.n_points
        if not -n // 2 <= k < n // 2:
            raise InvalidArgumentError(f"wavenumber {k} outside [{-n // 2}, {n // 2})")
        return complex(self.coeffs[k + n // 2])

    def multiply(self, multiplier) -> "Spectrum":
        """Pointwise product with a multiplier sampled at ``self.frequencies``.

        The Nyquist mode ``xi = -N/(4X)`` has no partner on the grid, so only
        the real part of the multiplier is applied there; this keeps real
        inputs real for multipliers with ``m(-xi) = conj(m(xi))``.
        """
        m = np.array(np.broadcast_to(multiplier, self.coeffs.shape), dtype=complex)
        m[0] = m[0].real
        return Spectrum(self.grid, self.coeffs * m)

    def __add__(self, other: "Spectrum") -> "Spectrum":
        _check_same_grid(self, other)
        return Spectrum(self.grid, self.coeffs + other.coeffs)

    def __mul__(self, c: complex) -> "Spectrum":
        return Spectrum(self.grid, c * self.coeffs)

    __rmul__ = __mul__


def _check_same_grid(a, b):
    if a.grid != b.grid:
        raise GridMismatchError(f"grids differ: {a.grid} vs {b.grid}")


def _alternating(grid: GridSpec) -> np.ndarray:
    # exp(+i pi k) from the offset x_0 = -X
    return np.where(grid.wavenumbers % 2 == 0, 1.0, -1.0)


def forward_transform(f: SampledFunction) -> Spectrum:
    grid = f.grid
    c = grid.spacing * _alternating(grid) * np.fft.fftshift(np.fft.fft(f.values))
    return Spectrum(grid, c)


def inverse_transform(s: Spectrum) -> SampledFunction:
    """Real samples whose transform is ``s``.

    Raises :class:`SymmetryViolationError` when the result has an imaginary
    part above ``IMAG_RESIDUE_TOL`` of its magnitude.
    """
    grid = s.grid
    z = np.fft.ifft(np.fft.ifftshift(_alternating(grid) * s.coeffs)) / grid.spacing
    scale = np.max(np.abs(z)) if z.size else 0.0
    resid = np.max(np.abs(z.imag)) if z.size else 0.0
    if resid > IMAG_RESIDUE_TOL * scale:
        raise SymmetryViolationError(
            f"imaginary residue {resid:.3e} exceeds {IMAG_RESIDUE_TOL:g} of output scale {scale:.3e}")
    return SampledFunction(grid, z.real)


def inner_product(f: SampledFunction, g: SampledFunction) -> float:
    """Periodic trapezoid rule ``h * sum f_j g_j``."""
    _check_same_grid(f, g)
    return float(f.grid.spacing * np.dot(f.values, g.values))


def l2_norm(f: SampledFunction) -> float:
    return math.sqrt(max(inner_product(f, f), 0.0))


def spectral_energy(s: Spectrum, weight=None) -> float:
    """``1/(2X) * sum weight * |coeffs|^2``."""
    p = np.abs(s.coeffs) ** 2
    if weight is not None:
        p = weight * p
    return float(np.sum(p) / s.grid.length)


def hs_norm(f: SampledFunction, s: float) -> tuple[float, float]:
    """Full norm and seminorm of the Fourier-defined Sobolev space of order ``s``.

    The seminorm is ``(sum |2 pi xi_k|^(2s) |f^(xi_k)|^2 / (2X))^(1/2)``; for
    ``s = 0`` the weight is identically one, so the seminorm equals the L2 norm.
    """
    s = float(s)
    if not s >= 0:
        raise InvalidArgumentError(f"order must be nonnegative, got {s}")
    spec = forward_transform(f)
    semi2 = spectral_energy(spec, np.abs(2 * np.pi * spec.frequencies) ** (2 * s))
    l2 = spectral_energy(spec)
    return math.sqrt(l2 + semi2), math.sqrt(semi2)


def decay_ratio(f: SampledFunction, margin: float = 2.0) -> float:
    """max |f| over ``|x| > X - margin`` divided by max |f| (0 for the zero function)."""
    peak = np.max(np.abs(f.values))
    if peak == 0:
        return 0.0
    edge = np.abs(f.x) > f.grid.half_width - margin
    return float(np.max(np.abs(f.values[edge]), initial=0.0) / peak)


def is_admissible(f: SampledFunction, tol: float = 1e-12) -> bool:
    """Samples within two units of the box edge are below ``tol`` of the peak."""
    return decay_ratio(f) <= tol


# -- CSV ---------------------------------------------------------------------

def format_float(v: float) -> str:
    return format(float(v), ".17g")


def write_csv(f: SampledFunction, path: Union[str, Path, io.TextIOBase], column: str = "value") -> None:
    lines = [f"x,{column}"]
    lines += [f"{format_float(x)},{format_float(v)}" for x, v in zip(f.x, f.values)]
    text = "\n".join(lines) + "\n"
    if isinstance(path, io.TextIOBase):
        path.write(text)
    else:
        with open(path, "w", newline="\n") as fh:
            fh.write(text)


def read_csv(path: Union[str, Path]) -> SampledFunction:
    """Load ``x,value`` rows; the x column must be a complete grid."""
    data = np.loadtxt(path, delimiter=",", skiprows=1, ndmin=2)
    if data.shape[1] != 2:
        raise InvalidArgumentError(f"{path}: expected two columns, got {data.shape[1]}")
    x, v = data[:, 0], data[:, 1]
    grid = build_grid(len(x), -x[0])
    if not np.allclose(x, grid.nodes, rtol=0, atol=1e-12 * grid.half_width):
        raise InvalidArgumentError(f"{path}: x column is not a full uniform grid on [-X, X)")
    return SampledFunction(grid, v)
