"""Command-line front end.

    fracline <check|solve|verify|convergence|norms> [--config FILE]
             [--p R --q R --a R --b R --mu R] [--grid NxX]
             [--input FAMILY|FILE.csv] [--norm-orders s1,s2,...]
             [--levels K] [--seed N] [--out DIR] [--strict]

Exit codes: 0 success, 1 usage error, 2 NotCertified under ``check --strict``,
3 a failed verify row, 4 I/O failure, 5 numerical failure (e.g. a near-singular
symbol during ``solve``).
"""
from __future__ import annotations

import argparse
import json
import logging
import os
import sys
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional, Sequence

from . import families
from .errors import FraclineError, InvalidArgumentError
from .report import dumps, emit_report
from .rl_ops import LEFT
from .solver import solve
from .spectral_core import (GridSpec, SampledFunction, hs_norm, is_admissible, parse_grid, read_csv,
                            write_csv)
from .suites import convergence_study, run_identity_suite
from .wellposedness import OperatorCoefficients, classify

log = logging.getLogger("fracline")

COMMANDS = ("check", "solve", "verify", "convergence", "norms")
COEFF_KEYS = ("p", "q", "a", "b", "mu")
EXIT_OK, EXIT_USAGE, EXIT_NOT_CERTIFIED, EXIT_VERIFY, EXIT_IO, EXIT_NUMERIC = range(6)


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="fracline", description="Spectral Riemann-Liouville toolkit and certified solver.")
    ap.add_argument("command", choices=COMMANDS)
    ap.add_argument("--config", metavar="FILE", help="JSON file with the same keys as the flags")
    for k in COEFF_KEYS:
        ap.add_argument(f"--{k}", type=float, metavar="R")
    ap.add_argument("--grid", metavar="NxX", help="grid points and half-width, e.g. 4096x16")
    ap.add_argument("--input", metavar="FAMILY|FILE.csv")
    ap.add_argument("--norm-orders", metavar="s1,s2,...")
    ap.add_argument("--levels", type=int, metavar="K")
    ap.add_argument("--seed", type=int, metavar="N")
    ap.add_argument("--out", metavar="DIR")
    ap.add_argument("--strict", action="store_true", default=None)
    return ap


@dataclass
class RunConfig:
    command: str
    coefficients: Optional[OperatorCoefficients] = None
    mu: Optional[float] = None
    grid: Optional[GridSpec] = None
    input: str = "gaussian"
    norm_orders: list = field(default_factory=list)
    levels: int = 3
    seed: int = 0
    out: Path = Path(".")
    strict: bool = False


def _orders(value) -> list[float]:
    if isinstance(value, (list, tuple)):
        return [float(v) for v in value]
    try:
        return [float(s) for s in str(value).split(",") if s.strip()]
    except ValueError:
        raise UsageError(f"bad --norm-orders {value!r}") from None


def resolve_config(ns: argparse.Namespace) -> RunConfig:
    """Merge config file and flags (flags win)."""
    merged: dict = {}
    if ns.config:
        try:
            with open(ns.config) as fh:
                raw = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            raise UsageError(f"cannot read config {ns.config}: {exc}") from None
        if not isinstance(raw, dict):
            raise UsageError("config file must hold a JSON object")
        merged.update({k.replace("-", "_"): v for k, v in raw.items()})
    merged.update({k: v for k, v in vars(ns).items() if v is not None and k != "config"})

    cfg = RunConfig(command=ns.command)
    try:
        present = [k for k in COEFF_KEYS if k in merged]
        cfg.mu = float(merged["mu"]) if "mu" in merged else None
        if len(present) == len(COEFF_KEYS):
            cfg.coefficients = OperatorCoefficients.from_dict(merged)
        elif ns.command in ("check", "solve"):
            missing = [f"--{k}" for k in COEFF_KEYS if k not in merged]
            raise UsageError(f"{ns.command} needs {' '.join(missing)}")
        if "grid" in merged:
            cfg.grid = parse_grid(str(merged["grid"]))
    except InvalidArgumentError as exc:
        raise UsageError(str(exc)) from None
    cfg.input = str(merged.get("input", cfg.input))
    cfg.norm_orders = _orders(merged.get("norm_orders", []))
    cfg.levels = int(merged.get("levels", cfg.levels))
    cfg.seed = int(merged.get("seed", cfg.seed))
    cfg.out = Path(merged.get("out") or os.environ.get("FRACLINE_OUT") or ".")
    cfg.strict = bool(merged.get("strict", False))
    if cfg.levels < 1:
        raise UsageError("--levels must be >= 1")
    if any(s < 0 for s in cfg.norm_orders):
        raise UsageError("norm orders must be nonnegative")
    return cfg


def load_input(cfg: RunConfig, default_grid: str = "4096x16") -> SampledFunction:
    grid = cfg.grid or parse_grid(default_grid)
    try:
        if families.is_family_name(cfg.input):
            f = families.sample(grid, cfg.input)
        else:
            path = Path(cfg.input)
            if not path.is_file():
                raise UsageError(f"--input {cfg.input!r} is neither a known family nor an existing file")
            f = read_csv(path)
    except InvalidArgumentError as exc:
        raise UsageError(str(exc)) from None
    if not is_admissible(f):
        log.warning("input does not decay to 1e-12 of its peak within 2 units of the box edge; "
                    "periodization error may exceed check tolerances")
    return f


def _write(cfg: RunConfig, name: str, obj, fmt: str) -> Path:
    cfg.out.mkdir(parents=True, exist_ok=True)
    path = cfg.out / name
    emit_report(obj, fmt, path)
    return path


def cmd_check(cfg: RunConfig) -> int:
    report = classify(cfg.coefficients, grid=cfg.grid or parse_grid("4096x16"))
    path = _write(cfg, "wellposedness.json", report, "json")
    print(f"case {report.case_id.value}  alpha={report.alpha:g}  C={report.stability_constant}  -> {path}")
    if cfg.strict and not report.certified:
        return EXIT_NOT_CERTIFIED
    return EXIT_OK


def cmd_solve(cfg: RunConfig) -> int:
    f = load_input(cfg)
    report = classify(cfg.coefficients, grid=f.grid)
    result = solve(cfg.coefficients, f, cfg.norm_orders, report=report)
    payload = {"input": cfg.input, "coefficients": cfg.coefficients.to_dict(),
               "wellposedness": report.to_dict(), "result": result.to_dict()}
    path = _write(cfg, "solve.json", payload, "json")
    write_csv(result.u, cfg.out / "u.csv", column="u")
    print(f"residual_rel={result.residual_rel:.3e}  case={result.case}  -> {path}")
    return EXIT_OK


def cmd_verify(cfg: RunConfig) -> int:
    rows = run_identity_suite(cfg.grid or parse_grid("4096x16"), seed=cfg.seed)
    path = _write(cfg, "verify.csv", rows, "csv")
    width = max(len(r.anchor) for r in rows)
    for r in rows:
        print(f"{'PASS' if r.passed else 'FAIL'}  {r.anchor:<{width}}  {r.check:<28} {r.value:.3e} <= {r.threshold:g}")
    print(f"-> {path}")
    return EXIT_OK if all(r.passed for r in rows) else EXIT_VERIFY


def cmd_convergence(cfg: RunConfig) -> int:
    grid = cfg.grid or parse_grid("1024x16")
    mus = (cfg.mu,) if cfg.mu is not None else (0.4, 0.7, 1.3)
    if any(not 0 < m <= 2 for m in mus):
        raise UsageError("--mu for convergence must lie in (0, 2]")
    if not families.is_family_name(cfg.input):
        raise UsageError("convergence needs an analytic --input family")
    rows = convergence_study(cfg.input, mus, grid.n_points, grid.half_width, cfg.levels, LEFT)
    path = _write(cfg, "convergence.csv", rows, "csv")
    for r in rows:
        ratio = "" if r.ratio is None else f"ratio {r.ratio:.4f}"
        print(f"mu={r.mu:g}  N={r.n_points:<6d} h={r.h:.3e}  err={r.l2_error:.3e}  {ratio}")
    print(f"-> {path}")
    return EXIT_OK


def cmd_norms(cfg: RunConfig) -> int:
    f = load_input(cfg)
    orders = cfg.norm_orders or [0.0, 1.0]
    norms = {}
    for s in orders:
        full, semi = hs_norm(f, s)
        norms[format(s, ".17g")] = {"full": full, "seminorm": semi}
    payload = {"input": cfg.input, "grid": {"n_points": f.grid.n_points, "half_width": f.grid.half_width},
               "norms": norms}
    path = _write(cfg, "norms.json", payload, "json")
    print(dumps(norms), end="")
    print(f"-> {path}")
    return EXIT_OK


_DISPATCH = {"check": cmd_check, "solve": cmd_solve, "verify": cmd_verify,
             "convergence": cmd_convergence, "norms": cmd_norms}


def run(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        ns = parser.parse_args(argv)
        cfg = resolve_config(ns)
        return _DISPATCH[cfg.command](cfg)
    except SystemExit as exc:
        # --help
        return int(exc.code or 0)
    except UsageError as exc:
        print(parser.format_usage(), end="", file=sys.stderr)
        print(f"fracline: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"fracline: I/O error: {exc}", file=sys.stderr)
        return EXIT_IO
    except FraclineError as exc:
        print(f"fracline: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_NUMERIC


def main() -> None:
    logging.basicConfig(level=logging.WARNING, format="%(levelname)s %(name)s: %(message)s")
    sys.exit(run())


if __name__ == "__main__":
    main()
