"""Well-posedness certification for ``L u = f`` with

    L u = p D^{2-mu} u + q D^{(2-mu)*} u + a D u + b u,   0 < mu < 1, b != 0, p^2 + q^2 != 0.

``||L v||^2`` splits exactly as ``sum_j C_j ||D^{sigma_j} v||^2`` with five
constants whose signs (only ``C_2`` and ``C_4`` can be negative) pick one of four
cases.  Case I needs nothing further.  Cases II-IV need a dilation factor
``alpha`` satisfying a pair of strict inequalities; it is found by a geometric
scan.  Once found, the negative scaled mass is redistributed so that the
leading (``sigma_1``) and zeroth-order (``sigma_5``) coefficients ``P_11``,
``P_15`` stay positive, and the stability constant is

    C = min(alpha^(2 sigma_1 - 1) P_11, alpha^(2 sigma_5 - 1) P_15)^(-1/2).
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .errors import InvalidArgumentError, NoCertificateError
from .spectral_core import GridSpec

STRICT_SLACK = 1e-12


@dataclass(frozen=True)
class OperatorCoefficients:
    p: float
    q: float
    a: float
    b: float
    mu: float

    def __post_init__(self):
        for name in ("p", "q", "a", "b", "mu"):
            v = float(getattr(self, name))
            if not math.isfinite(v):
                raise InvalidArgumentError(f"{name} must be finite")
            object.__setattr__(self, name, v)
        if self.b == 0:
            raise InvalidArgumentError("b must be nonzero")
        if self.p == 0 and self.q == 0:
            raise InvalidArgumentError("p and q cannot both vanish")
        if not 0 < self.mu < 1:
            raise InvalidArgumentError(f"mu must lie in (0, 1), got {self.mu}")

    @classmethod
    def from_dict(cls, d: dict) -> "OperatorCoefficients":
        missing = [k for k in ("p", "q", "a", "b", "mu") if k not in d]
        if missing:
            raise InvalidArgumentError(f"missing coefficients: {', '.join(missing)}")
        return cls(d["p"], d["q"], d["a"], d["b"], d["mu"])

    def to_dict(self) -> dict:
        return {"p": self.p, "q": self.q, "a": self.a, "b": self.b, "mu": self.mu}


@dataclass(frozen=True)
class NormConstants:
    c: tuple
    sigma: tuple

    def scaled(self, alpha: float) -> np.ndarray:
        """``C_j / alpha^(2 sigma_j - 1)``."""
        return np.array([c * alpha ** (1 - 2 * s) for c, s in zip(self.c, self.sigma)])


def norm_constants(co: OperatorCoefficients) -> NormConstants:
    p, q, a, b, mu = co.p, co.q, co.a, co.b, co.mu
    sigma = (2 - mu, (3 - mu) / 2, 1.0, (2 - mu) / 2, 0.0)
    c = (
        p * p + q * q + 2 * p * q * math.cos(sigma[0] * math.pi),
        2 * a * (q - p) * math.cos(sigma[1] * math.pi),
        a * a,
        2 * b * (p + q) * math.cos(sigma[3] * math.pi),
        b * b,
    )
    return NormConstants(c, sigma)


def operator_symbol(co: OperatorCoefficients, xi):
    """``H(xi)``, the Fourier multiplier of ``L``.  Accepts scalars or arrays."""
    xi_arr = np.asarray(xi, dtype=float)
    s = 2 - co.mu
    t = (2 * np.pi * np.abs(xi_arr)) ** s
    theta = s * np.pi * np.sign(xi_arr) / 2
    re = t * (co.p + co.q) * np.cos(theta) + co.b
    im = t * (co.p - co.q) * np.sin(theta) + 2 * np.pi * co.a * xi_arr
    out = re + 1j * im
    return complex(out) if out.ndim == 0 else out


def min_abs_symbol(co: OperatorCoefficients, grid: GridSpec) -> float:
    return float(np.min(np.abs(operator_symbol(co, grid.frequencies))))


# -- classification -----------------------------------------------------------

class Case(str, enum.Enum):
    I = "I"
    II = "II"
    III = "III"
    IV = "IV"
    NOT_CERTIFIED = "NotCertified"


@dataclass(frozen=True)
class AlphaScan:
    """alpha = factor**k for k = k_max, k_max - 1, ..., k_min."""

    k_max: int = 20
    k_min: int = -40
    factor: float = 2.0

    def values(self) -> list[float]:
        if self.k_max < self.k_min:
            raise InvalidArgumentError("empty alpha scan")
        return [self.factor ** k for k in range(self.k_max, self.k_min - 1, -1)]


@dataclass(frozen=True)
class Condition:
    description: str
    lhs: float
    rhs: float
    strict: bool = True

    @property
    def margin(self) -> float:
        """Relative excess of lhs over rhs."""
        return (self.lhs - self.rhs) / max(abs(self.lhs), abs(self.rhs), 1e-300)

    @property
    def satisfied(self) -> bool:
        if self.strict:
            return self.lhs - self.rhs > STRICT_SLACK * max(abs(self.lhs), abs(self.rhs))
        return self.lhs >= self.rhs

    def to_dict(self) -> dict:
        return {"description": self.description, "lhs": self.lhs, "rhs": self.rhs,
                "strict": self.strict, "satisfied": self.satisfied}


@dataclass(frozen=True)
class WellposednessReport:
    coefficients: OperatorCoefficients
    constants: NormConstants
    case_id: Case
    alpha: float
    p1: tuple
    stability_constant: Optional[float]
    conditions: tuple = field(default_factory=tuple)
    min_abs_symbol: Optional[float] = None
    diagnostic: str = ""

    @property
    def certified(self) -> bool:
        return self.case_id is not Case.NOT_CERTIFIED

    def to_dict(self) -> dict:
        return {
            "coefficients": self.coefficients.to_dict(),
            "C": list(self.constants.c),
            "sigma": list(self.constants.sigma),
            "case": self.case_id.value,
            "certified": self.certified,
            "alpha": self.alpha,
            "P11": self.p1[0],
            "P15": self.p1[1],
            "stability_constant": self.stability_constant,
            "conditions": [c.to_dict() for c in self.conditions],
            "min_abs_symbol": self.min_abs_symbol,
            "diagnostic": self.diagnostic,
        }


def case_conditions(case: Case, nc: NormConstants, b: float, alpha: float) -> list[Condition]:
    """The two alpha-dependent hypotheses of the case, as written."""
    c, sg = nc.c, nc.sigma
    sc = nc.scaled(alpha)
    bb = b * b

    def power(j):
        return alpha ** (2 * (sg[4] - sg[j]))

    if case is Case.II:
        return [
            Condition("sum_{j=1..4} C_j / alpha^(2 sigma_j - 1) > 0", float(sc[:4].sum()), 0.0),
            Condition("b^2 > -C_4 alpha^(2 (sigma_5 - sigma_4))", bb, -c[3] * power(3)),
        ]
    if case is Case.III:
        return [
            Condition("sum_{j=1..2} C_j / alpha^(2 sigma_j - 1) > 0", float(sc[:2].sum()), 0.0),
            Condition("b^2 > -sum_{j=2..4} C_j alpha^(2 (sigma_5 - sigma_j))", bb,
                      -sum(c[j] * power(j) for j in (1, 2, 3))),
        ]
    if case is Case.IV:
        return [
            Condition("sum_{j=1,2,4} C_j / alpha^(2 sigma_j - 1) > 0", float(sc[[0, 1, 3]].sum()), 0.0),
            Condition("b^2 > -sum_{j=2,4} C_j alpha^(2 (sigma_5 - sigma_j))", bb,
                      -sum(c[j] * power(j) for j in (1, 3))),
        ]
    raise InvalidArgumentError(f"case {case} has no alpha conditions")


def _absorb(deficit: float, capacities: list[float]) -> tuple[list[float], float]:
    """Spread a nonpositive ``deficit`` over slots in order, never taking a slot
    below zero; returns the (nonpositive) share per slot and the remainder."""
    shares = []
    for cap in capacities:
        take = max(deficit, -max(cap, 0.0))
        shares.append(take)
        deficit -= take
    return shares, deficit


def leading_coefficients(case: Case, nc: NormConstants, alpha: float) -> tuple[float, float]:
    """``(P_11, P_15)`` at ``alpha`` for the given case."""
    sc = nc.scaled(alpha)
    if case is Case.I:
        return float(nc.c[0]), float(nc.c[4])
    if case is Case.II:
        # C_4 mass goes into slots 2 and 3 first, the rest is charged to slot 1
        _, rest = _absorb(min(sc[3], 0.0), [sc[1], sc[2]])
        return float(sc[0] + rest), float(sc[3] + sc[4])
    if case is Case.III:
        # C_2 mass goes into slots 3 and 4 first, the rest is charged to slot 5
        _, rest = _absorb(min(sc[1], 0.0), [sc[2], sc[3]])
        return float(sc[0] + sc[1]), float(sc[4] + rest)
    if case is Case.IV:
        return float(sc[0] + sc[1] + sc[3]), float(sc[1] + sc[3] + sc[4])
    raise InvalidArgumentError("no leading coefficients without a certificate")


def _constant(alpha, p1, nc):
    s1, s5 = nc.sigma[0], nc.sigma[4]
    m = min(alpha ** (2 * s1 - 1) * p1[0], alpha ** (2 * s5 - 1) * p1[1])
    return m ** -0.5


def sign_case(nc: NormConstants) -> Case:
    c2, c4 = nc.c[1], nc.c[3]
    if c2 >= 0 and c4 >= 0:
        return Case.I
    if c2 >= 0:
        return Case.II
    if c4 >= 0:
        return Case.III
    return Case.IV


def classify(co: OperatorCoefficients, scan: Optional[AlphaScan] = None,
             grid: Optional[GridSpec] = None) -> WellposednessReport:
    """Certify existence/uniqueness and compute a stability constant.

    Returns a NotCertified report (not an error) when no scanned alpha meets
    both hypotheses; its conditions are those at the alpha that came closest.
    """
    scan = scan or AlphaScan()
    nc = norm_constants(co)
    case = sign_case(nc)
    mh = min_abs_symbol(co, grid) if grid is not None else None

    if case is Case.I:
        conds = (Condition("C_2 >= 0", nc.c[1], 0.0, strict=False),
                 Condition("C_4 >= 0", nc.c[3], 0.0, strict=False))
        p1 = leading_coefficients(case, nc, 1.0)
        return WellposednessReport(co, nc, case, 1.0, p1, _constant(1.0, p1, nc), conds, mh)

    best = None
    for alpha in scan.values():
        conds = case_conditions(case, nc, co.b, alpha)
        if all(c.satisfied for c in conds):
            p1 = leading_coefficients(case, nc, alpha)
            conds += [Condition("P_11 > 0", p1[0], 0.0), Condition("P_15 > 0", p1[1], 0.0)]
            if all(c.satisfied for c in conds):
                return WellposednessReport(co, nc, case, alpha, p1, _constant(alpha, p1, nc),
                                           tuple(conds), mh)
        worst = min(c.margin for c in conds)
        if best is None or worst > best[0]:
            best = (worst, alpha, conds)

    _, alpha, conds = best
    p1 = leading_coefficients(case, nc, alpha)
    b_cond = conds[1]
    diag = (f"sign pattern of case {case.value}, but no scanned alpha satisfies both hypotheses; "
            f"closest alpha = {alpha:g}, where the b^2 hypothesis needs b^2 > {b_cond.rhs:.6g}"
            " (increase |b|)")
    return WellposednessReport(co, nc, Case.NOT_CERTIFIED, alpha, p1, None, tuple(conds), mh, diag)


def stability_constant(report: WellposednessReport) -> float:
    if not report.certified or report.stability_constant is None:
        raise NoCertificateError("coefficients were not certified; no stability constant")
    return report.stability_constant
