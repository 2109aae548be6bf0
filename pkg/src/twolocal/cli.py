"""Command-line front end.

Every verb prints one report. JSON (the default) carries a schema field
``"v": 1`` and is written with sorted keys, so identical arguments give
byte-identical output. Exit codes: 0 success, 1 usage error, 2 domain error.

Each common flag can be preset through the environment: ``TWOLOCAL_P``,
``TWOLOCAL_E``, ``TWOLOCAL_M``, ``TWOLOCAL_T_WINDOW``, ``TWOLOCAL_PI_WINDOW``,
``TWOLOCAL_SEED`` and ``TWOLOCAL_OUTPUT``. Explicit flags win.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from dataclasses import dataclass
from typing import Optional

from . import checks
from .asw import asw_reduce, level
from .coeff import ALLOWED_PRIMES, MAX_DEGREE
from .errors import DomainError, LengthMismatch
from .forms import Form1f, cartier0, cartier2, one_minus_C
from .milnor import fil_level, split_phi, sym_dlog, tame
from .pairing import WindowSpec, dual_pair, gram_matrix, rec_pair, varpi_window_rank
from .parse import is_form2, parse_form2, parse_ratfun, parse_series, parse_symbol, parse_witt
from .residue import Res_K, chi_f, res_f, res_K
from .series import INF, Context, format_series
from .weil import weil_check
from .witt import WittVec

SCHEMA = 1
ENV_PREFIX = "TWOLOCAL_"
VERBS = ("witt", "reduce", "conductor", "cartier", "residue", "tame", "dlog", "split",
         "pair", "gram", "varpi-rank", "weil", "selftest")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


@dataclass(frozen=True)
class RunConfig:
    p: int = 2
    e: int = 1
    m: Optional[int] = None
    t_lo: int = -8
    t_hi: int = 8
    pi_lo: int = -8
    pi_hi: int = 8
    seed: int = 0
    output: str = "json"

    def __post_init__(self):
        if self.p not in ALLOWED_PRIMES:
            raise UsageError(f"--p must be one of {ALLOWED_PRIMES}, got {self.p}")
        if not 1 <= self.e <= MAX_DEGREE:
            raise UsageError(f"--e must be in 1..{MAX_DEGREE}")
        if self.m is not None and not 1 <= self.m <= 4:
            raise UsageError("--m must be in 1..4")
        if self.t_hi <= self.t_lo or self.pi_hi <= self.pi_lo:
            raise UsageError("windows lo:hi need lo < hi")
        if self.output not in ("json", "csv", "text"):
            raise UsageError("--output must be json, csv or text")

    def context(self) -> Context:
        return Context(p=self.p, e=self.e, m_max=self.m or 4, t_window=(self.t_lo, self.t_hi),
                       pi_window=(self.pi_lo, self.pi_hi), seed=self.seed)


def _window(text):
    try:
        lo, hi = text.split(":")
        return int(lo), int(hi)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected lo:hi, got {text!r}") from None


def _env(name, default):
    return os.environ.get(ENV_PREFIX + name, default)


def _common(parser):
    parser.add_argument("--p", type=int, default=int(_env("P", 2)))
    parser.add_argument("--e", type=int, default=int(_env("E", 1)))
    m = _env("M", None)
    parser.add_argument("--m", type=int, default=int(m) if m is not None else None)
    parser.add_argument("--t-window", type=_window, default=_window(_env("T_WINDOW", "-8:8")))
    parser.add_argument("--pi-window", type=_window, default=_window(_env("PI_WINDOW", "-8:8")))
    parser.add_argument("--seed", type=int, default=int(_env("SEED", 0)))
    parser.add_argument("--output", choices=("json", "csv", "text"), default=_env("OUTPUT", "json"))


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="twolocal", description="Exact computations over F_q((t))((pi)).")
    sub = parser.add_subparsers(dest="verb", parser_class=_Parser)

    def verb(name, help_):
        sp = sub.add_parser(name, help=help_)
        _common(sp)
        return sp

    sp = verb("witt", "Witt vector arithmetic")
    sp.add_argument("op", choices=("add", "sub", "mul", "neg", "F", "V", "R"))
    sp.add_argument("a")
    sp.add_argument("b", nargs="?")

    sp = verb("reduce", "reduce a character modulo (1-F)W_m(K)")
    sp.add_argument("a")
    sp = verb("conductor", "Swan conductor of a character")
    sp.add_argument("a")

    sp = verb("cartier", "Cartier operator on a 2-form or a p-th power")
    sp.add_argument("x")
    sp.add_argument("--one-minus", type=int, metavar="N", default=None,
                    help="apply 1-C with output pole order N instead")

    sp = verb("residue", "residue maps")
    sp.add_argument("x")
    sp.add_argument("--map", choices=("resK", "resf", "ResK", "chif"), default="ResK")

    for name, help_ in (("tame", "tame symbol"), ("dlog", "dlog of a symbol"),
                        ("split", "remove the tame part of a symbol")):
        sp = verb(name, help_)
        sp.add_argument("symbol")

    sp = verb("pair", "evaluate a pairing")
    sp.add_argument("--which", choices=("dual", "rec"), default="dual")
    sp.add_argument("--n", type=int, default=0)
    sp.add_argument("left")
    sp.add_argument("right")

    sp = verb("gram", "Gram matrix on a matched window")
    sp.add_argument("--which", choices=("dual", "rec"), default="dual")
    sp.add_argument("--n", type=int, default=0)
    sp.add_argument("--t-width", type=int, default=1)
    sp.add_argument("--pi-width", type=int, default=1)

    sp = verb("varpi-rank", "window rank of the fil_1 / fil_n quotient")
    sp.add_argument("--n", type=int, default=2)
    sp.add_argument("--width", type=int, default=1)

    sp = verb("weil", "Weil reciprocity on P^1")
    sp.add_argument("--f", required=True)
    sp.add_argument("--g", required=True)

    sp = verb("selftest", "run the invariant suite")
    sp.add_argument("--quick", action="store_true")
    return parser


# -- formatting --------------------------------------------------------------

def witt_str(a: WittVec) -> str:
    if a.m == 1:
        return format_series(a.comps[0])
    return "[" + "; ".join(format_series(w) for w in a.comps) + "]"


def _witt(cfg: RunConfig, ctx, text) -> WittVec:
    a = parse_witt(ctx, text)
    if cfg.m is not None and a.m != cfg.m:
        raise LengthMismatch(f"--m {cfg.m} but the vector has length {a.m}")
    return a


def _emit(report: dict, fmt: str, out):
    if fmt == "json":
        out.write(json.dumps(dict(report, v=SCHEMA), sort_keys=True) + "\n")
        return
    if fmt == "csv":
        w = csv.writer(out, lineterminator="\n")
        if "matrix" in report:
            w.writerows(report["matrix"])
            return
        for k in sorted(report):
            v = report[k]
            w.writerow([k, v if isinstance(v, (str, int, bool)) else json.dumps(v, sort_keys=True)])
        return
    if "checks" in report:
        for line in report["lines"]:
            out.write(line + "\n")
        out.write(f"{report['passed']}/{report['total']} checks passed\n")
        return
    for k in sorted(report):
        v = report[k]
        if k == "matrix":
            out.write("matrix:\n")
            for row in v:
                out.write("  " + " ".join(str(x) for x in row) + "\n")
        else:
            out.write(f"{k}: {v if isinstance(v, (str, int, bool)) else json.dumps(v, sort_keys=True)}\n")


# -- verbs ---------------------------------------------------------------------

def _cmd_witt(cfg, ctx, args):
    a = _witt(cfg, ctx, args.a)
    if args.op in ("add", "sub", "mul"):
        if args.b is None:
            raise UsageError(f"{args.op} needs two vectors")
        b = _witt(cfg, ctx, args.b)
        r = {"add": a + b, "sub": a - b, "mul": a * b}[args.op]
    elif args.op == "neg":
        r = -a
    else:
        r = {"F": a.frobenius, "V": a.verschiebung, "R": a.restrict}[args.op]()
    return {"result": witt_str(r), "m": r.m}


def _cmd_reduce(cfg, ctx, args):
    a = _witt(cfg, ctx, args.a)
    red, shift = asw_reduce(a)
    return {"reduced": witt_str(red), "shift": witt_str(shift), "conductor": level(red)}


def _cmd_conductor(cfg, ctx, args):
    return _cmd_reduce(cfg, ctx, args)


def _cmd_cartier(cfg, ctx, args):
    if is_form2(args.x):
        alpha = parse_form2(ctx, args.x)
        out = cartier2(alpha) if args.one_minus is None else one_minus_C(alpha, args.one_minus)
        return {"result": format_series(out.log_coeff()), "basis": "dlog t^dlog pi"}
    if args.one_minus is not None:
        raise UsageError("--one-minus applies to 2-forms")
    return {"result": format_series(cartier0(parse_series(ctx, args.x)))}


def _cmd_residue(cfg, ctx, args):
    if args.map in ("resK", "ResK"):
        alpha = parse_form2(ctx, args.x)
        if args.map == "resK":
            return {"map": "resK", "value": format_series(res_K(alpha).b) + "*dt"}
        return {"map": "ResK", "value": Res_K(alpha)}
    b = parse_series(ctx, args.x, level="f")
    if args.map == "resf":
        return {"map": "resf", "value": str(res_f(Form1f(b)))}
    return {"map": "chif", "value": chi_f(b)}


def _cmd_tame(cfg, ctx, args):
    s = parse_symbol(ctx, args.symbol)
    return {"tame": format_series(tame(s))}


def _cmd_dlog(cfg, ctx, args):
    s = parse_symbol(ctx, args.symbol)
    return {"form": format_series(sym_dlog(s, ctx.K).log_coeff()), "basis": "dlog t^dlog pi"}


def _level_json(r):
    return None if r == INF else int(r)


def _cmd_split(cfg, ctx, args):
    s = parse_symbol(ctx, args.symbol)
    rest = split_phi(s, ctx.K)
    return {"tame": format_series(tame(s)), "split": str(rest), "fil_level": _level_json(fil_level(rest)),
            "dlog": format_series(sym_dlog(rest, ctx.K).log_coeff())}


def _cmd_pair(cfg, ctx, args):
    if args.which == "dual":
        value = dual_pair(parse_series(ctx, args.left), parse_form2(ctx, args.right), args.n)
    else:
        left = args.left.strip()
        a = parse_witt(ctx, left) if left.startswith("[") else parse_series(ctx, left)
        value = rec_pair(a, parse_symbol(ctx, args.right))
    return {"which": args.which, "n": args.n, "value": value}


def _cmd_gram(cfg, ctx, args):
    if args.n < 0 or args.t_width < 1 or args.pi_width < 1:
        raise UsageError("gram needs n >= 0 and positive widths")
    spec = WindowSpec.matched(args.n, args.t_width, args.pi_width)
    mat, rank = gram_matrix(ctx, spec, spec, args.which)
    return {"which": args.which, "n": args.n, "rows": len(mat), "cols": len(mat[0]) if mat else 0,
            "matrix": mat, "rank": rank}


def _cmd_varpi(cfg, ctx, args):
    if args.n < 1 or args.width < 0:
        raise UsageError("varpi-rank needs n >= 1 and width >= 0")
    return {"n": args.n, "width": args.width, "rank": varpi_window_rank(ctx, args.n, args.width)}


def _cmd_weil(cfg, ctx, args):
    f, g = parse_ratfun(ctx.F, args.f), parse_ratfun(ctx.F, args.g)
    ok, cert = weil_check(f, g)
    rows = [{"place": x, "degree": d, "tame": v, "norm": nm} for x, d, v, nm in cert]
    return {"ok": ok, "f": str(f), "g": str(g), "certificate": rows}


def _cmd_selftest(cfg, ctx, args):
    results = checks.run_all(cfg.seed, quick=args.quick)
    rows = [{"name": r.name, "passed": r.passed, "trials": r.trials, "failures": r.failures,
             "detail": r.detail} for r in results]
    passed = sum(r.passed for r in results)
    return {"checks": rows, "lines": [r.line() for r in results], "passed": passed,
            "failed": len(results) - passed, "total": len(results), "seed": cfg.seed,
            "quick": args.quick}


COMMANDS = {
    "witt": _cmd_witt, "reduce": _cmd_reduce, "conductor": _cmd_conductor,
    "cartier": _cmd_cartier, "residue": _cmd_residue, "tame": _cmd_tame, "dlog": _cmd_dlog,
    "split": _cmd_split, "pair": _cmd_pair, "gram": _cmd_gram, "varpi-rank": _cmd_varpi,
    "weil": _cmd_weil, "selftest": _cmd_selftest,
}


def dispatch(argv, out=None, err=None) -> int:
    """Run one verb; returns the exit code."""
    out = out or sys.stdout
    err = err or sys.stderr
    try:
        args = build_parser().parse_args(argv)
        if args.verb is None:
            raise UsageError(f"missing subcommand, one of: {', '.join(VERBS)}")
        cfg = RunConfig(p=args.p, e=args.e, m=args.m, t_lo=args.t_window[0], t_hi=args.t_window[1],
                        pi_lo=args.pi_window[0], pi_hi=args.pi_window[1], seed=args.seed,
                        output=args.output)
        report = COMMANDS[args.verb](cfg, cfg.context(), args)
    except DomainError as exc:
        err.write(f"error: {exc.variant}: {exc}\n")
        if args.output == "json":
            out.write(json.dumps({"error": exc.variant, "message": str(exc), "v": SCHEMA},
                                 sort_keys=True) + "\n")
        return 2
    except (UsageError, ValueError) as exc:
        # ParseError is a ValueError; so are out-of-range arguments
        err.write(f"usage error: {exc}\n")
        return 1
    buf = io.StringIO()
    _emit(report, cfg.output, buf)
    out.write(buf.getvalue())
    if args.verb == "selftest" and report["failed"]:
        return 2
    return 0


def main(argv=None) -> int:
    return dispatch(sys.argv[1:] if argv is None else argv)


if __name__ == "__main__":
    sys.exit(main())
