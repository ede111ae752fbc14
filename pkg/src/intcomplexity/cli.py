"""Command-line interface: ``icx <subcommand> ...``.

Exit codes: 0 success, 1 verification failure, 2 bad arguments or inputs.
Errors are reported on stderr as a single JSON object.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from decimal import Decimal, localcontext

from . import spectrum
from .cache import read_cache, write_cache
from .defect import D, D_from_defect, E, L, defect_of
from .engine import ComplexityTable, build_fast, build_oracle
from .errors import ComplexityError
from .stability import probe

SUITES = ("tables", "classify", "dtod", "small3", "coinci", "v3lem", "dinterp", "segment")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _emit_error(kind: str, message: str) -> None:
    print(json.dumps({"error": kind, "message": message}), file=sys.stderr)


def _table(need: int, cache_path: str | None) -> ComplexityTable:
    path = cache_path or os.environ.get("ICX_CACHE")
    if path:
        table = read_cache(path)
        if table.limit >= need:
            return table
    return build_fast(max(need, 1))


def _decimal_defect(c: int, n: int) -> str:
    """12 significant digits, suffixed with '~' to mark it as approximate."""
    m, e = n, 0
    while m % 3 == 0:
        m //= 3
        e += 1
    if m == 1:
        return str(c - 3 * e)
    with localcontext() as ctx:
        ctx.prec = 60
        value = Decimal(c) - 3 * Decimal(n).ln() / Decimal(3).ln()
    return f"{value:.12g}~"


def _positive(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}")
    if value < 1:
        raise argparse.ArgumentTypeError(f"must be >= 1: {value}")
    return value


def _nonnegative(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}")
    if value < 0:
        raise argparse.ArgumentTypeError(f"must be >= 0: {value}")
    return value


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="icx", description="Integer complexity and integer defect toolkit.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("sieve", help="build a complexity table and write a cache file")
    s.add_argument("--limit", type=_positive, required=True)
    s.add_argument("--mode", choices=("oracle", "fast"), default="fast")
    s.add_argument("--out", required=True)

    s = sub.add_parser("cpx", help="print ||N||")
    s.add_argument("n", type=_positive)
    s.add_argument("--cache")

    s = sub.add_parser("defect", help="exact defect descriptor of N")
    s.add_argument("n", type=_positive)
    s.add_argument("--cache")

    s = sub.add_parser("idefect", help="L(N), D(N) and the threshold cross-check")
    s.add_argument("n", type=_positive)
    s.add_argument("--cache")

    s = sub.add_parser("stability", help="bounded-horizon stability report (JSON)")
    s.add_argument("n", type=_positive)
    s.add_argument("--horizon", type=_nonnegative)
    s.add_argument("--cache")

    s = sub.add_parser("table", help="rows of the E_r(k) = h E(k) tables (CSV)")
    s.add_argument("--residue", type=int, choices=(0, 1, 2), required=True)
    s.add_argument("--rows", type=_positive)

    s = sub.add_parser("verify", help="run a verification suite; exit 0 iff it passes")
    s.add_argument("--suite", choices=SUITES, required=True)
    g = s.add_mutually_exclusive_group()
    g.add_argument("--kmax", type=_positive)
    g.add_argument("--limit", type=_positive)
    s.add_argument("--cache")

    s = sub.add_parser("classify", help="all n <= N with D(n) <= 1 (CSV)")
    s.add_argument("--limit", type=_positive, required=True)
    return p


def _run_verify(args) -> spectrum.Report:
    suite = args.suite
    if suite in ("tables", "v3lem"):
        if args.limit is not None:
            raise UsageError(f"suite {suite} takes --kmax, not --limit")
        kmax = args.kmax or 30
        table = _table(E(kmax), args.cache)
        if suite == "tables":
            return spectrum.verify_tables(kmax, table)
        rep = spectrum.Report("v3lem", {"kmax": kmax})
        for k in range(2, kmax + 1):
            sub = spectrum.v3lem_check(k, table)
            for v in sub.violations:
                rep.fail(**v)
        return rep
    if args.kmax is not None:
        raise UsageError(f"suite {suite} takes --limit, not --kmax")
    limit = args.limit or 100_000
    table = _table(limit, args.cache)
    if suite == "classify":
        return spectrum.verify_classification(limit, table)
    if suite == "dtod":
        return spectrum.verify_dtod(limit, table)
    if suite == "small3":
        return spectrum.verify_small3(limit, table)
    if suite == "coinci":
        return spectrum.coincicor_check(limit, table)
    if suite == "dinterp":
        return spectrum.verify_dinterp(limit, table)
    rep = spectrum.Report("segment", {"limit": limit})
    for a in range(3):
        for sub in (spectrum.verify_initial_segment(a, limit, table),
                    spectrum.verify_reverse_omega(a, limit, table)):
            for v in sub.violations:
                rep.fail(a=a, **v)
    return rep


def _dispatch(args) -> int:
    cmd = args.command
    if cmd == "sieve":
        table = (build_oracle if args.mode == "oracle" else build_fast)(args.limit)
        write_cache(args.out, table)
        print(json.dumps({"limit": table.limit, "mode": args.mode, "out": args.out}))
        return 0
    if cmd == "cpx":
        print(_table(args.n, args.cache)[args.n])
        return 0
    if cmd == "defect":
        d = defect_of(args.n, _table(args.n, args.cache))
        print(json.dumps({
            "complexity": d.complexity,
            "base": d.base,
            "approx": _decimal_defect(d.complexity, d.base),
        }))
        return 0
    if cmd == "idefect":
        n = args.n
        table = _table(n, args.cache)
        out = {"n": n, "complexity": table[n], "L": L(n), "D": D(n, table)}
        if n > 1:
            out["D_from_defect"] = D_from_defect(defect_of(n, table))
            out["agree"] = out["D_from_defect"] == out["D"]
        print(json.dumps(out))
        return 0
    if cmd == "stability":
        n = args.n
        if args.horizon is None and not (args.cache or os.environ.get("ICX_CACHE")):
            horizon = 3
        else:
            horizon = args.horizon
        table = _table(n * 3 ** (horizon if horizon is not None else 0), args.cache)
        print(json.dumps(probe(n, horizon, table).to_dict()))
        return 0
    if cmd == "table":
        print("r,h_num,h_den,K,leader")
        for row in spectrum.builtin_tables(args.residue, args.rows):
            print(row.as_csv())
        return 0
    if cmd == "verify":
        rep = _run_verify(args)
        print(rep.to_json())
        return 0 if rep.passed else 1
    if cmd == "classify":
        print("n,complexity")
        for n, c in spectrum.classify_D_le_1(args.limit):
            print(f"{n},{c}")
        return 0
    raise UsageError(f"unknown command {cmd}")


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
        return _dispatch(args)
    except UsageError as exc:
        _emit_error("usage", str(exc))
        return 2
    except (ComplexityError, OSError, ValueError) as exc:
        _emit_error(type(exc).__name__, str(exc))
        return 2


if __name__ == "__main__":
    sys.exit(main())
