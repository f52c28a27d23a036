"""``logfrob`` command-line front end.

Exit codes: 0 success, 2 malformed input, 3 domain error (a JSON error
object is still written to stdout).
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from dataclasses import dataclass

from sympy import primerange

from . import artin, fields, symbols
from .arith import is_squarefree
from .errors import LogFrobError
from .families import FieldDescriptor, make_field
from .ladic import DEFAULT_DIGITS, Precision, iwasawa_log
from .logvals import log_valuation_q
from .rational import RationalNonzero

EXIT_OK, EXIT_PARSE, EXIT_DOMAIN = 0, 2, 3
FORMATS = ("json", "csv", "text")
TABLE_COLUMNS = ["p", "e", "f", "e_log", "f_log", "classical", "logarithmic", "frobenius"]


class ParseError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise ParseError(message)


@dataclass(frozen=True)
class CliConfig:
    digits: int = DEFAULT_DIGITS
    guard: int | None = None
    fmt: str = "json"

    def __post_init__(self):
        if self.digits < 4:
            raise ParseError(f"--prec must be at least 4, got {self.digits}")
        if self.fmt not in FORMATS:
            raise ParseError(f"unknown format {self.fmt!r}")

    def precision(self, ell: int) -> Precision:
        return Precision(ell, self.digits, self.guard)


def _rational(text: str) -> RationalNonzero:
    try:
        return RationalNonzero.parse(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from exc


def _range(text: str) -> tuple[int, int]:
    try:
        lo, hi = text.split(":")
        return int(lo), int(hi)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"expected LO:HI, got {text!r}") from exc


def _field_args(sub: argparse.ArgumentParser):
    sub.add_argument("--d", type=int, help="quadratic field Q(sqrt d), ell = 2")
    sub.add_argument("--tower-ell", type=int, help="odd prime ell of a tower layer")
    sub.add_argument("--layer", type=int, help="layer index n of B_n")


def _field(args) -> FieldDescriptor:
    if args.d is None and args.tower_ell is None:
        raise ParseError("give --d or --tower-ell/--layer")
    return make_field(args.d, args.tower_ell, args.layer)


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--prec", type=int, default=None, help="ℓ-adic digits k (default 32 or $LOGFROB_PREC)")
    common.add_argument("--guard", type=int, default=None, help="guard digits")
    common.add_argument("--format", choices=FORMATS, default="json")

    parser = _Parser(prog="logfrob", description="Logarithmic ramification toolkit over Q.")
    subs = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = subs.add_parser("iwlog", parents=[common], help="Iwasawa logarithm of a rational")
    s.add_argument("--ell", type=int, required=True)
    s.add_argument("--x", type=_rational, required=True)

    s = subs.add_parser("valuation", parents=[common], help="logarithmic valuation at p")
    s.add_argument("--ell", type=int, required=True)
    s.add_argument("--p", type=int, required=True)
    s.add_argument("--a", type=_rational, required=True)

    s = subs.add_parser("symbol", parents=[common], help="local symbol exponent")
    s.add_argument("--ell", type=int, required=True)
    s.add_argument("--p", required=True, help="prime or 'inf'")
    s.add_argument("--a", type=_rational, required=True)
    s.add_argument("--m", type=int, required=True)

    s = subs.add_parser("product-check", parents=[common], help="product formula for local symbols")
    s.add_argument("--ell", type=int, required=True)
    s.add_argument("--a", type=_rational, required=True)
    s.add_argument("--m", type=int, required=True)

    for name, help_ in (("classify", "classify a prime"), ("frobenius", "logarithmic Frobenius")):
        s = subs.add_parser(name, parents=[common], help=help_)
        _field_args(s)
        s.add_argument("--p", type=int, required=True)

    s = subs.add_parser("conductor", parents=[common], help="global logarithmic conductor")
    _field_args(s)

    s = subs.add_parser("artin", parents=[common], help="Artin image of a divisor")
    _field_args(s)
    s.add_argument("--divisor", required=True, help='e.g. "7^1*13^2*l^3"')

    s = subs.add_parser("reciprocity", parents=[common], help="Artin image of a principal divisor")
    _field_args(s)
    s.add_argument("--a", type=_rational, required=True)

    s = subs.add_parser("table", parents=[common], help="classification table")
    s.add_argument("--d-range", type=_range, help="LO:HI, quadratic fields")
    s.add_argument("--tower-ell", type=int, help="odd prime for tower layers")
    s.add_argument("--layers", type=_range, default=None, help="LO:HI layer indices")
    s.add_argument("--p-max", type=int, required=True)
    return parser


# ---------------------------------------------------------------- commands


def _cmd_iwlog(args, cfg):
    prec = cfg.precision(args.ell)
    value = iwasawa_log(args.x, prec)
    return {"ell": args.ell, "x": str(args.x), "log": str(value), "certified": prec.certified}


def _cmd_valuation(args, cfg):
    prec = cfg.precision(args.ell)
    value = log_valuation_q(args.a, args.p, prec)
    return {"p": args.p, "a": str(args.a), "value": str(value)}


def _cmd_symbol(args, cfg):
    try:
        place = symbols.parse_place(args.p)
    except ValueError as exc:
        raise ParseError(str(exc)) from exc
    return symbols.local_symbol(args.a, place, args.ell, args.m, cfg.precision(args.ell)).to_dict()


def _cmd_product_check(args, cfg):
    return symbols.product_formula_check(args.a, args.ell, args.m, cfg.precision(args.ell)).to_dict()


def _cmd_classify(args, cfg):
    return fields.classify_prime(_field(args), args.p).to_dict()


def _cmd_frobenius(args, cfg):
    fld = _field(args)
    prec = cfg.precision(fld.ell)
    out = artin.log_frobenius(fld, args.p, prec).to_dict()
    action = artin.frobenius_action(fld, args.p, prec)
    if action is not None:
        out["action"] = action.to_dict()
    return out


def _cmd_conductor(args, cfg):
    cond = fields.global_conductor(_field(args))
    return {"conductor": cond.to_dict(), "support": sorted(cond.support)}


def _cmd_artin(args, cfg):
    fld = _field(args)
    prec = cfg.precision(fld.ell)
    try:
        D = artin.LogDivisor.parse(args.divisor, prec)
    except LogFrobError:
        raise
    except ValueError as exc:
        raise ParseError(str(exc)) from exc
    return {"image": artin.artin_image(fld, D, prec).to_dict(), "divisor": str(D)}


def _cmd_reciprocity(args, cfg):
    fld = _field(args)
    return artin.reciprocity_check(fld, args.a, cfg.precision(fld.ell)).to_dict()


def _frob_cell(fld, p, prec) -> str:
    try:
        g = artin.log_frobenius(fld, p, prec)
    except LogFrobError:
        return ""
    if isinstance(g, artin.QuadSign):
        return f"{g.s:+d}"
    return str(g.t)


def table_rows(cfg: CliConfig, p_max: int, d_range=None, tower_ell=None, layers=None):
    """Yield one dict per (field, p), d (or layer) ascending then p ascending."""
    primes = list(primerange(2, p_max + 1))
    if d_range is not None:
        lo, hi = d_range
        for d in range(lo, hi + 1):
            if d in (0, 1) or not is_squarefree(d):
                continue
            fld = make_field(d=d)
            prec = cfg.precision(2)
            for p in primes:
                yield {"d": d, **_row(fld, p, prec)}
    else:
        lo, hi = layers
        for n in range(lo, hi + 1):
            fld = make_field(tower_ell=tower_ell, layer=n)
            prec = cfg.precision(tower_ell)
            for p in primes:
                yield {"ell": tower_ell, "n": n, **_row(fld, p, prec)}


def _row(fld, p, prec) -> dict:
    c = fields.classify_prime(fld, p).to_dict()
    c["frobenius"] = _frob_cell(fld, p, prec)
    return c


def _cmd_table(args, cfg):
    if (args.d_range is None) == (args.tower_ell is None):
        raise ParseError("give exactly one of --d-range or --tower-ell")
    if args.tower_ell is not None:
        layers = args.layers or (1, 1)
        keys = ["ell", "n"]
    else:
        layers = None
        keys = ["d"]
    rows = list(table_rows(cfg, args.p_max, args.d_range, args.tower_ell, layers))
    return _Table(keys + TABLE_COLUMNS, rows)


@dataclass
class _Table:
    columns: list
    rows: list


COMMANDS = {
    "iwlog": _cmd_iwlog,
    "valuation": _cmd_valuation,
    "symbol": _cmd_symbol,
    "product-check": _cmd_product_check,
    "classify": _cmd_classify,
    "frobenius": _cmd_frobenius,
    "conductor": _cmd_conductor,
    "artin": _cmd_artin,
    "reciprocity": _cmd_reciprocity,
    "table": _cmd_table,
}


# ---------------------------------------------------------------- output


def _flatten(obj: dict, prefix: str = "") -> dict:
    out = {}
    for k, v in obj.items():
        key = f"{prefix}{k}"
        if isinstance(v, dict):
            out.update(_flatten(v, key + "."))
        elif isinstance(v, list):
            out[key] = " ".join(str(x) for x in v)
        else:
            out[key] = v
    return out


def _cell(v) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    return str(v)


def render(result, fmt: str) -> str:
    if isinstance(result, _Table):
        if fmt == "json":
            return json.dumps(result.rows, ensure_ascii=False, separators=(",", ":")) + "\n"
        if fmt == "csv":
            buf = io.StringIO()
            w = csv.writer(buf, lineterminator="\n")
            w.writerow(result.columns)
            for row in result.rows:
                w.writerow([row[c] for c in result.columns])
            return buf.getvalue()
        lines = [result.columns] + [[str(r[c]) for c in result.columns] for r in result.rows]
        widths = [max(len(line[i]) for line in lines) for i in range(len(result.columns))]
        return "".join("  ".join(x.ljust(w) for x, w in zip(line, widths)).rstrip() + "\n" for line in lines)
    if fmt == "json":
        return json.dumps(result, ensure_ascii=False, separators=(",", ":")) + "\n"
    flat = _flatten(result)
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(flat.keys())
        w.writerow(_cell(v) for v in flat.values())
        return buf.getvalue()
    return "".join(f"{k}: {_cell(v)}\n" for k, v in flat.items())


def _config(args) -> CliConfig:
    digits = args.prec
    if digits is None:
        env = os.environ.get("LOGFROB_PREC")
        try:
            digits = int(env) if env else DEFAULT_DIGITS
        except ValueError as exc:
            raise ParseError(f"LOGFROB_PREC must be an integer, got {env!r}") from exc
    return CliConfig(digits, args.guard, args.format)


def run(argv: list[str] | None = None, stdout=None, stderr=None) -> int:
    stdout = sys.stdout if stdout is None else stdout
    stderr = sys.stderr if stderr is None else stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        cfg = _config(args)
        result = COMMANDS[args.command](args, cfg)
    except ParseError as exc:
        stderr.write(f"logfrob: error: {exc}\n")
        return EXIT_PARSE
    except LogFrobError as exc:
        stdout.write(json.dumps(exc.to_dict(), ensure_ascii=False, separators=(",", ":")) + "\n")
        stderr.write(f"logfrob: {exc.code}: {exc}\n")
        return EXIT_DOMAIN
    except ValueError as exc:
        # remaining ValueErrors come from malformed numbers (non-prime p, bad ℓ, ...)
        stderr.write(f"logfrob: error: {exc}\n")
        return EXIT_PARSE
    stdout.write(render(result, cfg.fmt))
    return EXIT_OK


def main() -> None:
    sys.exit(run())
