"""Identity suites: the operator identities as numerical checks, plus the
Grunwald-Letnikov versus spectral refinement study.

Every check returns a :class:`CheckRow` naming the identity it exercises.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Iterable, Optional, Sequence

import numpy as np

from . import families
from .rl_ops import (LEFT, RIGHT, FracOrder, Side, apply_rl, dilate, dilate_by_regridding,
                     gl_derivative, rl_symbol, translate, weak_pairing_residual)
from .solver import apply_L, regularity_gain, solve, symmetry_check
from .spectral_core import (GridSpec, SampledFunction, build_grid, forward_transform, hs_norm,
                            inner_product, inverse_transform, l2_norm, spectral_energy)
from .wellposedness import OperatorCoefficients, classify, norm_constants

NORM_SETS = ((1, 1, 0, -1, 0.5), (1, 0, 0, 1, 0.8), (2, 1, 1, 3, 0.4))


@dataclass(frozen=True)
class CheckRow:
    check: str
    anchor: str
    value: float
    threshold: float
    passed: bool

    def to_dict(self) -> dict:
        return {"check": self.check, "anchor": self.anchor, "value": self.value,
                "threshold": self.threshold, "passed": self.passed}


def _row(check, anchor, values, threshold) -> CheckRow:
    worst = float(max(values)) if len(values) else 0.0
    return CheckRow(check, anchor, worst, threshold, worst <= threshold)


def rel_diff(a: SampledFunction, b: SampledFunction) -> float:
    scale = max(l2_norm(a), l2_norm(b))
    d = l2_norm(a - b)
    return d / scale if scale > 0 else d


# -- individual identities ---------------------------------------------------

def plancherel_defect(f: SampledFunction) -> float:
    phys = inner_product(f, f)
    freq = spectral_energy(forward_transform(f))
    return abs(phys - freq) / max(phys, 1e-300)


def norm_equality_defect(co: OperatorCoefficients, v: SampledFunction) -> float:
    """``| ||Lv||^2 - sum_j C_j ||D^{sigma_j} v||^2 | / ||Lv||^2``."""
    nc = norm_constants(co)
    lv = apply_L(co, v)
    lhs = inner_product(lv, lv)
    rhs = sum(c * l2_norm(apply_rl(v, FracOrder(s, LEFT))) ** 2 for c, s in zip(nc.c, nc.sigma))
    return abs(lhs - rhs) / lhs


def scaled_norm_defect(co: OperatorCoefficients, phi_family, grid: GridSpec, delta: float) -> float:
    """Defect of ``||L(phi(./delta))||^2 = sum_j C_j delta^(1-2 sigma_j) int |2 pi xi|^(2 sigma_j) |phi^|^2``.

    The moments of ``phi^`` are taken on the grid of half-width ``X/delta``,
    whose nodes are ``x_j / delta``.
    """
    nc = norm_constants(co)
    w = apply_L(co, dilate(SampledFunction.from_callable(grid, phi_family), 1.0 / delta))
    lhs = inner_product(w, w)
    phi = families.sample(GridSpec(grid.n_points, grid.half_width / delta), phi_family)
    ph = forward_transform(phi)
    t = np.abs(2 * np.pi * ph.frequencies)
    rhs = sum(c * delta ** (1 - 2 * s) * spectral_energy(ph, t ** (2 * s)) for c, s in zip(nc.c, nc.sigma))
    return abs(lhs - rhs) / lhs


def dilation_defect(family, grid: GridSpec, order: float, kappa: float, side: Side = LEFT) -> float:
    """``Pi_k(D^s w)`` against ``k^(-s) D^s(Pi_k w)`` on ``grid``.

    The left side is computed on the grid of half-width ``kappa X`` (nodes
    ``kappa x_j``) and relabelled, so no interpolation is involved.
    """
    ord_ = FracOrder(order, side)
    wide = families.sample(GridSpec(grid.n_points, grid.half_width * kappa), family)
    lhs = dilate_by_regridding(apply_rl(wide, ord_), kappa)
    lhs = SampledFunction(grid, lhs.values)
    rhs = kappa ** (-order) * apply_rl(dilate(SampledFunction.from_callable(grid, family), kappa), ord_)
    return rel_diff(lhs, rhs)


def translation_defect(f: SampledFunction, order: float, steps: int, side: Side = LEFT) -> float:
    ord_ = FracOrder(order, side)
    return rel_diff(translate(apply_rl(f, ord_), steps), apply_rl(translate(f, steps), ord_))


# -- verify suite ------------------------------------------------------------

def _mixtures(grid, rng, count, differentiate=False):
    return [SampledFunction.from_callable(grid, families.random_mixture(rng, differentiate=differentiate))
            for _ in range(count)]


def run_identity_suite(grid: GridSpec, seed: int = 0, pairs: int = 20) -> list[CheckRow]:
    rng = np.random.default_rng(seed)
    g = families.sample(grid, "gaussian")
    hg = families.sample(grid, "hermite_gaussian(1,pi)")
    plain = _mixtures(grid, rng, pairs)
    zero_mean = _mixtures(grid, rng, pairs, differentiate=True)
    rows = []

    rows.append(_row("plancherel", "Plancherel identity",
                     [plancherel_defect(f) for f in [g, hg] + plain], 1e-12))
    rows.append(_row("transform round trip", "Fourier inversion",
                     [np.max(np.abs(inverse_transform(forward_transform(f)).values - f.values))
                      / np.max(np.abs(f.values)) for f in [g] + plain], 1e-13))

    s1 = rng.uniform(-2, 2, 10_000)
    s2 = rng.uniform(-2, 2, 10_000)
    xi = np.exp(rng.uniform(-6, 6, 10_000)) * rng.choice([-1, 1], 10_000)
    sg = []
    inv = []
    for side in (LEFT, RIGHT):
        for a, b, x in zip(s1, s2, xi):
            prod = rl_symbol(FracOrder(a, side), x) * rl_symbol(FracOrder(b, side), x)
            ref = rl_symbol(FracOrder(a + b, side), x)
            sg.append(abs(prod - ref) / abs(ref))
            inv.append(abs(rl_symbol(FracOrder(a, side), x) * rl_symbol(FracOrder(-a, side), x) - 1))
    rows.append(_row("symbol semigroup", "R-L symbol semigroup", sg, 1e-13))
    rows.append(_row("symbol inverse", "R-L symbol inverse", inv, 1e-13))

    semi, invd = [], []
    for f in [hg] + zero_mean[:5]:
        for side in (LEFT, RIGHT):
            two = apply_rl(apply_rl(f, FracOrder(-0.3, side)), FracOrder(-0.4, side))
            semi.append(rel_diff(two, apply_rl(f, FracOrder(-0.7, side))))
            back = apply_rl(apply_rl(f, FracOrder(-0.6, side)), FracOrder(0.6, side))
            invd.append(rel_diff(back, f))
    rows.append(_row("integral semigroup", "R-L integral semigroup", semi, 1e-11))
    rows.append(_row("derivative inverts integral", "R-L left inverse", invd, 1e-11))

    adj = []
    mus = np.round(np.arange(0.1, 1.0, 0.1), 1)
    for i in range(pairs):
        v, w = zero_mean[i], zero_mean[(i + 1) % pairs]
        adj.append(weak_pairing_residual(v, w, -float(mus[i % len(mus)])))
    rows.append(_row("integral adjoint", "R-L integral adjoint", adj, 1e-10))

    trans, dil = [], []
    for order in (0.5, 1.3, -0.5):
        f = hg if order < 0 else g
        for steps in (-37, 5, 128):
            trans.append(translation_defect(f, order, steps))
        for kappa in (0.5, 2.0):
            fam = families.HermiteGaussian(1, math.pi) if order < 0 else families.Gaussian()
            dil.append(dilation_defect(fam, grid, order, kappa))
    rows.append(_row("translation commutation", "R-L translation invariance", trans, 1e-9))
    rows.append(_row("dilation commutation", "R-L dilation scaling", dil, 1e-9))

    r1, r2, r3, cross = [], [], [], []
    for mu in (0.0, 0.3, 0.5, 0.7):
        for i in range(pairs):
            rep = symmetry_check(plain[i], plain[(i + 3) % pairs], mu)
            r1.append(rep.residual1)
            r2.append(rep.residual2)
            r3.append(rep.residual3)
            if mu == 0.5:
                cross.append(rep.cross_term)
    rows.append(_row("left/right energy", "symmetry: left-right energies", r1, 1e-8))
    rows.append(_row("frequency form", "symmetry: frequency form", r2, 1e-8))
    rows.append(_row("cross term", "symmetry: cross term", r3, 1e-8))
    rows.append(_row("cross term at mu=1/2", "symmetry: cross term", cross, 1e-10))

    ne, sne = [], []
    for co in map(lambda c: OperatorCoefficients(*c), NORM_SETS):
        ne += [norm_equality_defect(co, v) for v in plain[:10]]
        sne += [scaled_norm_defect(co, families.Gaussian(), grid, d) for d in (0.5, 1.0, 2.0)]
    rows.append(_row("norm equality", "norm equality for L", ne, 1e-6))
    rows.append(_row("scaled norm equality", "scaled norm equality", sne, 1e-6))

    wp = [weak_pairing_residual(f, psi, s) for s in (0.25, 0.5, 1.5)
          for f, psi in zip([g] + plain[:5], [hg] + plain[5:10])]
    rows.append(_row("weak pairing", "weak derivative pairing", wp, 1e-9))

    res, stab, rt, shift, reg = [], [], [], [], []
    for c in NORM_SETS[:2]:
        co = OperatorCoefficients(*c)
        rep = classify(co, grid=grid)
        for f in plain[:10]:
            out = solve(co, f, report=rep)
            res.append(out.residual_rel)
            sc = out.stability_check
            stab.append(sc.lhs / sc.rhs)
            rt.append(rel_diff(solve(co, apply_L(co, f), report=rep).u, f))
            df = apply_rl(f, 1.0)
            shift.append(rel_diff(solve(co, df, report=rep).u, apply_rl(out.u, 1.0)))
            for m in range(4):
                bound = regularity_gain(co, grid, m) * hs_norm(f, m)[0]
                reg.append(hs_norm(out.u, 2 - co.mu + m)[0] / bound)
    rows.append(_row("solve residual", "strong solution", res, 1e-10))
    rows.append(CheckRow("stability estimate", "stability estimate", max(stab), 1.0, max(stab) < 1.0))
    rows.append(_row("solve round trip", "uniqueness", rt, 1e-10))
    rows.append(_row("derivative shift", "regularity: derivative shift", shift, 1e-9))
    rows.append(_row("regularity gain", "regularity estimate", reg, 1.0))
    return rows


# -- Grunwald-Letnikov refinement --------------------------------------------

@dataclass(frozen=True)
class ConvergenceRow:
    mu: float
    n_points: int
    h: float
    l2_error: float
    ratio: Optional[float]

    def to_dict(self) -> dict:
        return {"mu": self.mu, "n_points": self.n_points, "h": self.h,
                "l2_error": self.l2_error, "ratio": "" if self.ratio is None else self.ratio}


def convergence_study(family="gaussian", mus: Sequence[float] = (0.4, 0.7, 1.3),
                      base_n: int = 1024, half_width: float = 16.0, levels: int = 3,
                      side: Side = LEFT) -> list[ConvergenceRow]:
    """GL error against the spectral derivative over ``levels`` halvings of h.

    The reference is the spectral result on a 4x finer grid, restricted to
    the coarse nodes.
    """
    if isinstance(family, str):
        family = families.parse_family(family)
    rows = []
    for mu in mus:
        prev = None
        for lev in range(levels + 1):
            n = base_n * 2 ** lev
            grid = build_grid(n, half_width)
            fine = families.sample(build_grid(4 * n, half_width), family)
            ref = SampledFunction(grid, apply_rl(fine, FracOrder(mu, side)).values[::4])
            err = l2_norm(gl_derivative(families.sample(grid, family), mu, side) - ref)
            rows.append(ConvergenceRow(float(mu), n, grid.spacing, err,
                                       None if prev is None else prev / err))
            prev = err
    return rows
