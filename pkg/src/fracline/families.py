"""Built-in analytic test functions.

Each family is a small callable object so a sampled copy can be re-evaluated
at dilated nodes exactly.  Accepted textual forms::

    gaussian(a,c)          exp(-a (x - c)^2)
    hermite_gaussian(n,a)  H_n(x) exp(-a x^2)      (physicists' Hermite)
    sech(a)                1 / cosh(a x)

Arguments may be omitted (defaults below) and ``pi`` is accepted as a number.
"""
from __future__ import annotations

import math
import re
from dataclasses import dataclass
from typing import Sequence

import numpy as np
from numpy.polynomial import hermite as _herm

from .errors import InvalidArgumentError
from .spectral_core import GridSpec, SampledFunction


@dataclass(frozen=True)
class Gaussian:
    a: float = math.pi
    c: float = 0.0

    def __call__(self, x):
        return np.exp(-self.a * (np.asarray(x) - self.c) ** 2)

    def derivative(self, x):
        x = np.asarray(x)
        return -2 * self.a * (x - self.c) * self(x)

    def second_derivative(self, x):
        x = np.asarray(x)
        return (4 * self.a ** 2 * (x - self.c) ** 2 - 2 * self.a) * self(x)

    def __str__(self):
        return f"gaussian({self.a!r},{self.c!r})"


@dataclass(frozen=True)
class HermiteGaussian:
    n: int = 1
    a: float = math.pi

    def __call__(self, x):
        x = np.asarray(x)
        coef = np.zeros(self.n + 1)
        coef[-1] = 1.0
        return _herm.hermval(x, coef) * np.exp(-self.a * x ** 2)

    def __str__(self):
        return f"hermite_gaussian({self.n},{self.a!r})"


@dataclass(frozen=True)
class Sech:
    a: float = 4.0

    def __call__(self, x):
        return 1.0 / np.cosh(self.a * np.asarray(x))

    def __str__(self):
        return f"sech({self.a!r})"


@dataclass(frozen=True)
class GaussianMixture:
    """``sum_i amp_i * exp(-a_i (x - c_i)^2)``, optionally differentiated once.

    The differentiated form has zero mean, which fractional integrals need.
    """

    amps: tuple
    widths: tuple
    centers: tuple
    differentiate: bool = False

    def __call__(self, x):
        x = np.asarray(x, dtype=float)
        out = np.zeros_like(x)
        for amp, a, c in zip(self.amps, self.widths, self.centers):
            g = amp * np.exp(-a * (x - c) ** 2)
            out += -2 * a * (x - c) * g if self.differentiate else g
        return out


def random_mixture(rng: np.random.Generator, *, max_terms: int = 3,
                   width_range=(1.0, 6.0), center_range=(-3.0, 3.0),
                   differentiate: bool = False) -> GaussianMixture:
    k = int(rng.integers(1, max_terms + 1))
    return GaussianMixture(
        amps=tuple(rng.choice([-1.0, 1.0], k) * rng.uniform(0.5, 1.5, k)),
        widths=tuple(rng.uniform(*width_range, k)),
        centers=tuple(rng.uniform(*center_range, k)),
        differentiate=differentiate,
    )


_FAMILIES = {
    "gaussian": (Gaussian, (float, float)),
    "hermite_gaussian": (HermiteGaussian, (int, float)),
    "sech": (Sech, (float,)),
}

_CALL = re.compile(r"^\s*([a-z_]+)\s*(?:\((.*)\))?\s*$")


def _number(tok: str) -> float:
    tok = tok.strip().lower()
    if tok in ("pi", "+pi"):
        return math.pi
    if tok == "-pi":
        return -math.pi
    return float(tok)


def parse_family(text: str):
    """Build a family callable from e.g. ``"hermite_gaussian(1,pi)"``."""
    m = _CALL.match(text)
    if not m or m.group(1) not in _FAMILIES:
        raise InvalidArgumentError(
            f"unknown analytic family {text!r}; expected one of {sorted(_FAMILIES)}")
    cls, types = _FAMILIES[m.group(1)]
    raw = [t for t in (m.group(2) or "").split(",") if t.strip()]
    if len(raw) > len(types):
        raise InvalidArgumentError(f"{m.group(1)} takes at most {len(types)} arguments")
    try:
        args = [typ(_number(t)) for typ, t in zip(types, raw)]
    except ValueError:
        raise InvalidArgumentError(f"bad arguments in {text!r}") from None
    return cls(*args)


def is_family_name(text: str) -> bool:
    m = _CALL.match(text)
    return bool(m) and m.group(1) in _FAMILIES


def sample(grid: GridSpec, family) -> SampledFunction:
    if isinstance(family, str):
        family = parse_family(family)
    return SampledFunction.from_callable(grid, family)


def sample_many(grid: GridSpec, families: Sequence) -> list[SampledFunction]:
    return [sample(grid, fam) for fam in families]
