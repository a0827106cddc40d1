"""Spectral solution of ``L u = f`` and the operator identity checks built on it."""
from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from typing import Iterable, Optional

import numpy as np

from .errors import InfiniteGainError, InvalidArgumentError, NearSingularSymbolError
from .rl_ops import LEFT, RIGHT, FracOrder, apply_rl
from .spectral_core import (GridSpec, SampledFunction, forward_transform, hs_norm, inner_product,
                            inverse_transform, l2_norm)
from .wellposedness import OperatorCoefficients, WellposednessReport, classify, operator_symbol

log = logging.getLogger(__name__)

# modes with |H| below this fraction of |b| are dropped by solve
SYMBOL_FLOOR = 1e-6
MAX_ZEROED_MODES = 2


def apply_L(co: OperatorCoefficients, u: SampledFunction) -> SampledFunction:
    """``p D^{2-mu} u + q D^{(2-mu)*} u + a D u + b u``, term by term."""
    s = 2 - co.mu
    out = co.b * u
    if co.p:
        out = out + co.p * apply_rl(u, FracOrder(s, LEFT))
    if co.q:
        out = out + co.q * apply_rl(u, FracOrder(s, RIGHT))
    if co.a:
        out = out + co.a * apply_rl(u, FracOrder(1, LEFT))
    return out


def apply_L_adjoint(co: OperatorCoefficients, u: SampledFunction) -> SampledFunction:
    """The companion operator with sides swapped and advection reversed:
    ``p D^{(2-mu)*} u + q D^{2-mu} u - a D u + b u``."""
    s = 2 - co.mu
    out = co.b * u
    if co.p:
        out = out + co.p * apply_rl(u, FracOrder(s, RIGHT))
    if co.q:
        out = out + co.q * apply_rl(u, FracOrder(s, LEFT))
    if co.a:
        out = out - co.a * apply_rl(u, FracOrder(1, LEFT))
    return out


def apply_symbol(co: OperatorCoefficients, u: SampledFunction) -> SampledFunction:
    """``L u`` as one multiplication by ``H`` in frequency."""
    spec = forward_transform(u)
    return inverse_transform(spec.multiply(operator_symbol(co, u.grid.frequencies)))


@dataclass(frozen=True)
class StabilityCheck:
    lhs: float
    rhs: Optional[float]
    satisfied: Optional[bool]
    certified: bool
    ratio: float

    def to_dict(self) -> dict:
        return {"lhs": self.lhs, "rhs": self.rhs, "satisfied": self.satisfied,
                "certified": self.certified, "ratio": self.ratio,
                "tag": "certified" if self.certified else "NotCertified"}


@dataclass(frozen=True)
class SolveResult:
    u: SampledFunction
    residual_rel: float
    min_abs_symbol: float
    norms: dict
    stability_check: StabilityCheck
    zeroed_modes: int = 0
    case: str = ""
    extra: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "residual_rel": self.residual_rel,
            "min_abs_symbol": self.min_abs_symbol,
            "norms": {format(float(s), ".17g"): v for s, v in self.norms.items()},
            "stability_check": self.stability_check.to_dict(),
            "zeroed_modes": self.zeroed_modes,
            "case": self.case,
            "grid": {"n_points": self.u.grid.n_points, "half_width": self.u.grid.half_width},
            **self.extra,
        }


def solve(co: OperatorCoefficients, f: SampledFunction,
          requested_norm_orders: Iterable[float] = (),
          report: Optional[WellposednessReport] = None) -> SolveResult:
    """``u = (f^ / H)^v`` with a residual, norms and the stability estimate.

    Modes where ``|H| < 1e-6 |b|`` are set to zero (and logged); more than two
    such modes raise :class:`NearSingularSymbolError`.
    """
    grid = f.grid
    if report is None:
        report = classify(co, grid=grid)
    h = operator_symbol(co, grid.frequencies)
    absh = np.abs(h)
    small = absh < SYMBOL_FLOOR * abs(co.b)
    n_small = int(small.sum())
    if n_small > MAX_ZEROED_MODES:
        raise NearSingularSymbolError(
            f"{n_small} grid frequencies with |H| < {SYMBOL_FLOOR:g}|b|; the symbol has at most one real root")
    if n_small:
        log.warning("zeroing %d mode(s) where |H| < %g|b|", n_small, SYMBOL_FLOOR)
    inv = np.zeros_like(h)
    inv[~small] = 1.0 / h[~small]
    u = inverse_transform(forward_transform(f).multiply(inv))

    fn = l2_norm(f)
    res = l2_norm(apply_L(co, u) - f)
    residual_rel = res / fn if fn > 0 else res

    norms = {float(s): hs_norm(u, s)[0] for s in requested_norm_orders}
    lhs = hs_norm(u, 2 - co.mu)[0]
    ratio = lhs / fn if fn > 0 else 0.0
    if report.certified:
        rhs = report.stability_constant * fn
        check = StabilityCheck(lhs, rhs, lhs < rhs or lhs == rhs == 0.0, True, ratio)
    else:
        check = StabilityCheck(lhs, None, None, False, ratio)
    return SolveResult(u, residual_rel, float(absh.min()), norms, check, n_small, report.case_id.value)


@dataclass(frozen=True)
class SymmetryReport:
    """Normalized defects of the three symmetry relations for order ``mu``.

    ``cross_term`` is the un-normalized value of
    ``(D v, D* w) + (D w, D* v) - 2 cos(mu pi) (D v, D w)``.
    """

    residual1: float
    residual2: float
    residual3: float
    cross_term: float


def symmetry_check(v: SampledFunction, w: SampledFunction, mu: float) -> SymmetryReport:
    left, right = FracOrder(mu, LEFT), FracOrder(mu, RIGHT)
    dv, dw = apply_rl(v, left), apply_rl(w, left)
    dsv, dsw = apply_rl(v, right), apply_rl(w, right)
    ll = inner_product(dv, dw)
    rr = inner_product(dsv, dsw)
    vh, wh = forward_transform(v), forward_transform(w)
    xi = v.grid.frequencies
    freq = float(np.real(np.sum((2 * np.pi) ** (2 * mu) * np.abs(xi) ** (2 * mu)
                                * vh.coeffs * np.conj(wh.coeffs))) / v.grid.length)
    cross = inner_product(dv, dsw) + inner_product(dw, dsv) - 2 * math.cos(mu * math.pi) * ll
    scale = hs_norm(v, mu)[1] * hs_norm(w, mu)[1] + 1e-300
    return SymmetryReport(abs(ll - rr) / scale, abs(ll - freq) / scale, abs(cross) / scale, abs(cross))


def regularity_gain(co: OperatorCoefficients, grid: GridSpec, m: int) -> float:
    """Largest ratio of ``u``'s order-(2-mu+m) weight to ``f``'s order-m weight
    over the grid, for ``u^ = f^ / H``."""
    if m < 0:
        raise InvalidArgumentError(f"m must be nonnegative, got {m}")
    xi = grid.frequencies
    h = np.abs(operator_symbol(co, xi))
    if np.any(h == 0):
        raise InfiniteGainError("operator symbol vanishes on a grid frequency")
    t = np.abs(2 * np.pi * xi)
    num = 1 + t ** (2 * (2 - co.mu + m))
    den = 1 + t ** (2 * m)
    return float(np.max(np.sqrt(num / den) / h))
