"""Command-line front end.

Subcommands::

    dfc eval    --op {delta,nabla,diamond} (--fn SPEC | --input CSV) ...
    dfc weights --alpha A --n N
    dfc verify  --theorem {all,linearity,constant,coincidence,composition,leibniz} ...

Exit codes: 0 success / all checks passed, 1 a verification check failed,
2 usage error, 3 malformed input data.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import sys
from dataclasses import dataclass
from typing import Optional, Sequence

from .errors import DFCError
from .fracops import (
    DiamondParams,
    delta_fractional_sum,
    diamond_fractional_sum,
    nabla_fractional_sum,
)
from .grid import GridFunction
from .identities import SuiteConfig, Theorem, all_passed, run_suite
from .kernelmath import kernel_weights
from .numeric import Mode, Scalar, coerce, format_scalar, json_scalar, parse_scalar

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_USAGE = 2
EXIT_DATA = 3

THEOREM_CHOICES = ("all", "linearity", "constant", "coincidence", "composition", "leibniz")


class DataError(Exception):
    """Malformed input data (exit code 3)."""


@dataclass(frozen=True)
class RunConfig:
    subcommand: str
    mode: Mode
    op: str = "diamond"
    alpha: Optional[Scalar] = None
    beta: Optional[Scalar] = None
    gamma: Optional[Scalar] = None
    base: Optional[Scalar] = None
    n: Optional[int] = None
    fn: Optional[str] = None
    input_path: Optional[str] = None
    output_path: Optional[str] = None
    fmt: str = "csv"
    tol: Optional[float] = None
    seed: int = 0
    theorem: str = "all"


def _build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--mode", choices=[m.value for m in Mode], default=None,
                        help="numeric mode (default: $DFC_MODE or exact)")
    common.add_argument("--alpha", default="1/2", help="delta order, 'p/q' or decimal (float mode)")
    common.add_argument("--beta", default=None, help="nabla order (defaults to --alpha)")
    common.add_argument("--gamma", default="1/2", help="diamond weight in [0, 1]")
    common.add_argument("--base", default=None, help="left endpoint a of the grid (default 0)")
    common.add_argument("--n", type=int, default=None, help="number of grid points")
    common.add_argument("--output", default=None, help="write to this file instead of stdout")
    common.add_argument("--format", dest="fmt", choices=("csv", "json"), default="csv")

    parser = argparse.ArgumentParser(prog="dfc", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="subcommand", required=True)

    ev = sub.add_parser("eval", parents=[common], help="evaluate a fractional sum operator")
    ev.add_argument("--op", choices=("delta", "nabla", "diamond"), default="diamond")
    ev.add_argument("--fn", default=None, help="builtin input: const:K, ramp, poly:C0,C1,...")
    ev.add_argument("--input", default=None, help="CSV file with header 't,value'")

    sub.add_parser("weights", parents=[common], help="dump kernel weights c_j(alpha)")

    ve = sub.add_parser("verify", parents=[common], help="run the identity checks")
    ve.add_argument("--theorem", choices=THEOREM_CHOICES, default="all")
    ve.add_argument("--tol", type=float, default=None,
                    help="float-mode relative tolerance (default 1e-10)")
    ve.add_argument("--seed", type=int, default=0)
    return parser


def parse_args(argv: Optional[Sequence[str]] = None) -> RunConfig:
    """Parse and validate ``argv``; usage errors exit with status 2."""
    parser = _build_parser()
    ns = parser.parse_args(argv)

    mode_name = ns.mode or os.environ.get("DFC_MODE") or Mode.EXACT.value
    try:
        mode = Mode(mode_name)
    except ValueError:
        parser.error(f"DFC_MODE must be 'exact' or 'float', got {mode_name!r}")

    def scalar(flag: str, text: str) -> Scalar:
        try:
            return parse_scalar(text, mode)
        except (ValueError, DFCError) as exc:
            parser.error(f"{flag}: {exc}")

    alpha = scalar("--alpha", ns.alpha)
    beta = scalar("--beta", ns.beta) if ns.beta is not None else alpha
    gamma = scalar("--gamma", ns.gamma)
    if not alpha > 0:
        parser.error(f"--alpha must be > 0, got {ns.alpha}")
    if not beta > 0:
        parser.error(f"--beta must be > 0, got {ns.beta}")
    if not 0 <= gamma <= 1:
        parser.error(f"--gamma must lie in [0,1], got {ns.gamma}")
    base = scalar("--base", ns.base) if ns.base is not None else None
    if ns.n is not None and ns.n < 1:
        parser.error(f"--n must be >= 1, got {ns.n}")

    extra = {}
    if ns.subcommand == "eval":
        if (ns.fn is None) == (ns.input is None):
            parser.error("eval needs exactly one of --fn or --input")
        extra = dict(op=ns.op, fn=ns.fn, input_path=ns.input)
    elif ns.subcommand == "verify":
        tol = ns.tol
        if tol is not None:
            if not (math.isfinite(tol) and tol >= 0):
                parser.error(f"--tol must be a finite value >= 0, got {tol}")
            if mode is Mode.EXACT and tol != 0:
                parser.error("--tol applies to float mode; exact mode always uses tolerance 0")
        extra = dict(tol=tol, seed=ns.seed, theorem=ns.theorem)

    return RunConfig(
        subcommand=ns.subcommand,
        mode=mode,
        alpha=alpha,
        beta=beta,
        gamma=gamma,
        base=base,
        n=ns.n,
        output_path=ns.output,
        fmt=ns.fmt,
        **extra,
    )


# ---------------------------------------------------------------------------
# inputs


def builtin_function(spec: str, n: int, base: Scalar, mode: Mode) -> GridFunction:
    """Tabulate ``const:K``, ``ramp`` or ``poly:C0,C1,...`` at offsets ``j = 0 .. n-1``."""
    name, _, arg = spec.partition(":")
    if name == "const":
        k = parse_scalar(arg, mode)
        return GridFunction.constant(k, n, base)
    if name == "ramp" and not arg:
        return GridFunction.tabulate(lambda j: coerce(j, mode), n, base)
    if name == "poly" and arg:
        coeffs = [parse_scalar(c, mode) for c in arg.split(",")]

        def value(j):
            acc = coerce(0, mode)
            for c in reversed(coeffs):
                acc = acc * j + c
            return acc

        return GridFunction.tabulate(value, n, base)
    raise ValueError(f"unknown builtin function {spec!r}")


def read_csv(text: str, mode: Mode, base: Optional[Scalar] = None) -> GridFunction:
    """Parse ``t,value`` rows; ``t`` must be consecutive with spacing exactly 1."""
    rows = list(csv.reader(io.StringIO(text)))
    rows = [r for r in rows if r and any(cell.strip() for cell in r)]
    if not rows or [c.strip() for c in rows[0]] != ["t", "value"]:
        raise DataError("CSV must start with the header 't,value'")
    if len(rows) < 2:
        raise DataError("CSV has no data rows")
    ts, values = [], []
    for lineno, row in enumerate(rows[1:], start=2):
        if len(row) != 2:
            raise DataError(f"line {lineno}: expected 2 columns, got {len(row)}")
        try:
            ts.append(parse_scalar(row[0].strip(), mode))
            values.append(parse_scalar(row[1].strip(), mode))
        except (ValueError, DFCError) as exc:
            raise DataError(f"line {lineno}: {exc}") from None
    start = ts[0] if base is None else base
    for j, t in enumerate(ts):
        expected = start + j
        same = t == expected if mode is Mode.EXACT else math.isclose(t, expected, rel_tol=1e-12, abs_tol=1e-12)
        if not same:
            raise DataError(f"row {j + 1}: t = {format_scalar(t)}, expected {format_scalar(expected)} (unit spacing from base)")
    return GridFunction.of(values, start).to_mode(mode)


# ---------------------------------------------------------------------------
# outputs


def _render(header: Sequence[str], rows: list, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(
            [{h: (v if isinstance(v, int) else json_scalar(v)) for h, v in zip(header, row)} for row in rows],
            indent=None,
        ) + "\n"
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([v if isinstance(v, int) else format_scalar(v) for v in row])
    return buf.getvalue()


def _emit(cfg: RunConfig, text: str, stdout) -> None:
    if cfg.output_path:
        with open(cfg.output_path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        stdout.write(text)


def run_eval(cfg: RunConfig, stdout=None) -> int:
    stdout = stdout or sys.stdout
    mode = cfg.mode
    if cfg.input_path is not None:
        try:
            with open(cfg.input_path, encoding="utf-8-sig", newline="") as fh:
                f = read_csv(fh.read(), mode, cfg.base)
        except OSError as exc:
            raise DataError(str(exc)) from None
        if cfg.n is not None:
            if cfg.n > len(f):
                raise DataError(f"--n {cfg.n} exceeds the {len(f)} rows in {cfg.input_path}")
            f = GridFunction(f.base, f.samples[: cfg.n])
    else:
        base = cfg.base if cfg.base is not None else coerce(0, mode)
        f = builtin_function(cfg.fn, cfg.n or 8, base, mode)

    if cfg.op == "delta":
        out = delta_fractional_sum(f, cfg.alpha)
    elif cfg.op == "nabla":
        out = nabla_fractional_sum(f, cfg.beta)
    else:
        out = diamond_fractional_sum(f, DiamondParams(cfg.alpha, cfg.beta, cfg.gamma))
    rows = list(zip(out.points(), out.samples))
    _emit(cfg, _render(("t", "value"), rows, cfg.fmt), stdout)
    return EXIT_OK


def run_weights(cfg: RunConfig, stdout=None) -> int:
    stdout = stdout or sys.stdout
    w = kernel_weights(cfg.alpha, cfg.n or 8)
    rows = list(enumerate(w))
    _emit(cfg, _render(("j", "c_j"), rows, cfg.fmt), stdout)
    return EXIT_OK


def run_verify(cfg: RunConfig, stdout=None) -> int:
    """Run the selected checks and write one JSON report per line."""
    stdout = stdout or sys.stdout
    if cfg.theorem == "all":
        theorems = tuple(Theorem)
    else:
        theorems = (Theorem(cfg.theorem),)
    suite = SuiteConfig(
        alpha=cfg.alpha,
        beta=cfg.beta,
        gamma=cfg.gamma,
        n=cfg.n or 16,
        seed=cfg.seed,
        mode=cfg.mode,
        rtol=cfg.tol,
        base=cfg.base if cfg.base is not None else 0,
        theorems=theorems,
    )
    reports = run_suite(suite)
    text = "".join(json.dumps(r.to_dict()) + "\n" for r in reports)
    _emit(cfg, text, stdout)
    return EXIT_OK if all_passed(reports) else EXIT_FAILED


def main(argv: Optional[Sequence[str]] = None) -> int:
    cfg = parse_args(argv)
    runner = {"eval": run_eval, "weights": run_weights, "verify": run_verify}[cfg.subcommand]
    try:
        return runner(cfg)
    except DataError as exc:
        print(f"dfc: input error: {exc}", file=sys.stderr)
        return EXIT_DATA
    except (ValueError, DFCError) as exc:
        print(f"dfc: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
