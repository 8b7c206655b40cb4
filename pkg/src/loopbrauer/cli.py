"""Command-line front end.

Exit codes: 0 success, 2 mismatch or failed identity, 3 unparseable input,
4 evaluation at ``x = 0``.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import sys
from fractions import Fraction
from pathlib import Path

from . import analysis, cellmod
from . import diagrams as dg
from .algebra import (MODES, ONE_PARAM, AlgebraElement, CacheVersionMismatch, CorruptCache,
                      check_relations, default_cache_dir, mult_table)
from .diagrams import Diagram, DiagramParseError
from .scalars import EvalAtZero, parse_rational, rational_str
from .symgroup import as_partition, partitions_of

log = logging.getLogger("loopbrauer")

EXIT_OK, EXIT_MISMATCH, EXIT_PARSE, EXIT_ZERO = 0, 2, 3, 4


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_PARSE, f"{self.prog}: error: {message}\n")


def _rational(text: str) -> Fraction:
    try:
        return parse_rational(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(f"not an exact rational: {text!r}") from exc


def _partition(text: str):
    try:
        return as_partition(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from exc


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--family", choices=["A", "L", "S"])
    common.add_argument("--n", type=int)
    common.add_argument("--t", type=int)
    common.add_argument("--lambda", dest="lam", type=_partition, metavar="PARTS",
                        help="partition as a comma list, e.g. 2,1 (empty string for the empty one)")
    common.add_argument("--x0", action="append", type=_rational, default=None,
                        help="exact rational p/q, repeatable")
    common.add_argument("--mode", choices=MODES, default=ONE_PARAM)
    common.add_argument("--cache-dir", type=Path)
    common.add_argument("--format", choices=["json", "csv", "text"], default="json")
    common.add_argument("--jobs", type=int, default=1)
    common.add_argument("-v", "--verbose", action="store_true")

    p = _Parser(prog="loopbrauer", description="Exact computations in loop-Brauer algebras.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)
    sub.add_parser("dims", parents=[common], help="dimension by formula and by enumeration")
    sub.add_parser("enumerate", parents=[common], help="list basis diagrams")
    m = sub.add_parser("mult", parents=[common], help="product of two diagrams")
    m.add_argument("left", help='diagram text "n; p0 p1 ..." or a generator name (e1, g2, u3, 1)')
    m.add_argument("right")
    sub.add_parser("relations", parents=[common], help="generator relations")
    sub.add_parser("cell", parents=[common], help="cell module dimension and radicals")
    sub.add_parser("radical", parents=[common], help="radical scan over all cell modules")
    sub.add_parser("branch", parents=[common], help="branching checks")
    sub.add_parser("central", parents=[common], help="central element identities")
    sub.add_parser("report", parents=[common], help="run every check")
    return p


# -- helpers ----------------------------------------------------------------

def _need(args, *names):
    for name in names:
        if getattr(args, name) is None:
            raise UsageError(f"--{name.replace('lam', 'lambda')} is required for {args.command}")


def _family(args, allowed=("A", "L")) -> str:
    _need(args, "family")
    if args.family not in allowed:
        raise UsageError(f"{args.command} supports families {', '.join(allowed)}")
    return args.family


def _n(args) -> int:
    _need(args, "n")
    if args.n < 0:
        raise UsageError("--n must be non-negative")
    return args.n


def parse_diagram(spec: str, n: int | None) -> Diagram:
    spec = spec.strip()
    if ";" in spec:
        d = Diagram.from_text(spec)
        if n is not None and d.n != n:
            raise DiagramParseError(f"{spec!r} has {d.n} strands, --n is {n}")
        return d
    if n is None:
        raise DiagramParseError(f"generator name {spec!r} needs --n")
    if spec == "1":
        return dg.identity(n)
    kind, idx = spec[:1], spec[1:]
    if kind not in ("e", "g", "u") or not idx.isdigit():
        raise DiagramParseError(f"cannot parse diagram {spec!r}")
    try:
        return dg.generator(kind, int(idx), n)
    except ValueError as exc:
        raise DiagramParseError(str(exc)) from exc


def _cache_dir(args):
    return args.cache_dir if args.cache_dir is not None else default_cache_dir()


def _emit(args, payload, rows=None, text=None, out=None):
    out = out or sys.stdout
    if args.format == "json":
        out.write(json.dumps(payload, indent=2) + "\n")
    elif args.format == "csv":
        rows = rows if rows is not None else [payload]
        buf = io.StringIO()
        if rows:
            fields = list(rows[0])
            w = csv.DictWriter(buf, fieldnames=fields, lineterminator="\n")
            w.writeheader()
            for r in rows:
                w.writerow({k: (json.dumps(v) if isinstance(v, (list, dict)) else v)
                            for k, v in r.items()})
        out.write(buf.getvalue())
    else:
        out.write((text if text is not None else json.dumps(payload, indent=2)) + "\n")


# -- commands ---------------------------------------------------------------

def cmd_dims(args) -> int:
    family = _family(args, ("A", "L", "S"))
    n = _n(args)
    if n > 5:
        raise UsageError("dims enumerates diagrams and is limited to n <= 5")
    r = analysis.dims_check(family, n)
    text = f"{family}_{n}: formula {r['formula']}, enumerated {r['enumerated']}, " + \
        ("agree" if r["passed"] else "MISMATCH")
    _emit(args, r, text=text)
    return EXIT_OK if r["passed"] else EXIT_MISMATCH


def cmd_enumerate(args) -> int:
    family = _family(args, ("A", "L", "S"))
    n = _n(args)
    basis = dg.enumerate_diagrams(family, n)
    if args.t is not None:
        basis = [d for d in basis if d.rank == n - args.t]
    rows = [{"index": k, "rank": d.rank, "partner": list(d.partner)} for k, d in enumerate(basis)]
    text = "\n\n".join(f"#{r['index']}  {d.to_text()}\n{d.ascii()}" for r, d in zip(rows, basis))
    _emit(args, {"family": family, "n": n, "count": len(basis), "diagrams": rows},
          rows=rows, text=text)
    return EXIT_OK


def cmd_mult(args) -> int:
    n = args.n
    if n is None:
        # a generator name borrows the strand count of a text-form operand
        for spec in (args.left, args.right):
            if ";" in spec:
                n = Diagram.from_text(spec).n
                break
    a = parse_diagram(args.left, n)
    b = parse_diagram(args.right, n)
    if a.n != b.n:
        raise DiagramParseError(f"diagrams on {a.n} and {b.n} strands")
    cache = _cache_dir(args)
    family = args.family or "A"
    product = None
    if cache is not None and a.in_family(family) and b.in_family(family) and a.n <= 4:
        table = mult_table(family, a.n, args.mode, cache, args.jobs)
        index = {d: k for k, d in enumerate(table.basis)}
        product = table.product(index[a], index[b])
    if product is None:
        product = AlgebraElement.basis(a, args.mode) * AlgebraElement.basis(b, args.mode)
    (d, c), = product.coeffs.items()
    payload = {"n": a.n, "mode": args.mode, "left": list(a.partner), "right": list(b.partner),
               "product": list(d.partner), "coefficient": str(c), "display": str(product)}
    _emit(args, payload, text=str(product))
    return EXIT_OK


def cmd_relations(args) -> int:
    n = _n(args)
    results = check_relations(n, args.mode)
    rows = [r.to_json() for r in results]
    ok = all(r.passed for r in results)
    text = "\n".join(f"{'PASS' if r.passed else 'FAIL'}  {r.name}" +
                     (f"  ({r.detail})" if r.detail else "") for r in results)
    _emit(args, {"n": n, "mode": args.mode, "passed": ok, "results": rows}, rows=rows, text=text)
    return EXIT_OK if ok else EXIT_MISMATCH


def cmd_cell(args) -> int:
    family = _family(args)
    n = _n(args)
    if args.lam is None and args.t is None:
        raise UsageError("cell needs --lambda (or --t with a single partition of n-t)")
    lam = args.lam
    if lam is None:
        parts = partitions_of(n - args.t) if 0 <= args.t <= n else []
        if len(parts) != 1:
            raise UsageError("--t alone is ambiguous here, give --lambda")
        lam = parts[0]
    M = cellmod.cell_module(family, n, lam)
    if args.t is not None and args.t != M.t:
        raise UsageError(f"--t {args.t} disagrees with |lambda| = {sum(lam)}")
    payload = M.describe()
    if args.x0:
        rep = cellmod.module_rep(M)
        payload["radical_dim"] = {rational_str(x): len(cellmod.radical(M, x, rep))
                                  for x in args.x0}
    text = f"M_{family}{n}({','.join(map(str, lam))}): t={M.t}, dim={M.dim}"
    for x, k in payload.get("radical_dim", {}).items():
        text += f"\n  x0={x}: radical dim {k}"
    _emit(args, payload, text=text)
    return EXIT_OK


def cmd_radical(args) -> int:
    family = _family(args)
    n = _n(args)
    x0s = args.x0 or [parse_rational(x) for x in analysis.DEFAULT_X0[family]]
    scan = analysis.radical_scan(family, n, x0s, args.jobs)
    backed = [f for f in scan["flags"]
              if analysis.semisimplicity_expected(family, Fraction(f["x0"]))]
    scan["passed"] = not backed
    rows = [{"t": r["t"], "lambda": r["lambda"], "dim": r["dim"], "x0": x, "radical_dim": k}
            for r in scan["modules"] for x, k in r["radical_dims"].items()]
    text = "\n".join(f"t={r['t']} lambda={r['lambda']} dim={r['dim']} x0={r['x0']}: "
                     f"radical {r['radical_dim']}" for r in rows)
    _emit(args, scan, rows=rows, text=text)
    return EXIT_OK if scan["passed"] else EXIT_MISMATCH


def cmd_branch(args) -> int:
    family = _family(args)
    n = _n(args)
    if args.lam is not None:
        lams = [args.lam]
    else:
        lams = [lam for t in range(1, n + 1) for lam in partitions_of(n - t)]
    results = [analysis.branching_check(family, n, lam) for lam in lams]
    ok = all(r["passed"] for r in results)
    rows = [{k: r[k] for k in ("family", "n", "t", "lambda", "dim", "sub_restricted",
                               "sub_same", "quotient", "passed")} for r in results]
    text = "\n".join(f"{'PASS' if r['passed'] else 'FAIL'}  lambda={r['lambda']}: {r['dim']} = "
                     f"{r['sub_restricted']} + {r['sub_same']} + {r['quotient']}" for r in results)
    _emit(args, {"family": family, "n": n, "passed": ok, "results": results},
          rows=rows, text=text)
    return EXIT_OK if ok else EXIT_MISMATCH


def cmd_central(args) -> int:
    family = _family(args)
    n = _n(args)
    results = analysis.central_checks(family, n, args.mode)
    ok = all(r["passed"] for r in results)
    rows = [{"name": r["name"], "passed": r["passed"]} for r in results]
    text = "\n".join(f"{'PASS' if r['passed'] else 'FAIL'}  {r['name']}" for r in results)
    _emit(args, {"family": family, "n": n, "passed": ok, "results": results},
          rows=rows, text=text)
    return EXIT_OK if ok else EXIT_MISMATCH


def cmd_report(args) -> int:
    families = (args.family,) if args.family else ("A", "L")
    if any(f not in ("A", "L") for f in families):
        raise UsageError("report supports families A and L")
    max_n = {f: args.n for f in families} if args.n is not None else None
    report = analysis.full_report(families, max_n, args.x0, args.jobs)
    rows = [{"section": name, "checks": len(items),
             "passed": all(i.get("passed", True) for i in items)}
            for name, items in report["checks"].items()]
    text = "\n".join(f"{'PASS' if r['passed'] else 'FAIL'}  {r['section']} ({r['checks']})"
                     for r in rows)
    _emit(args, report, rows=rows, text=text)
    return EXIT_OK if report["passed"] else EXIT_MISMATCH


COMMANDS = {
    "dims": cmd_dims, "enumerate": cmd_enumerate, "mult": cmd_mult,
    "relations": cmd_relations, "cell": cmd_cell, "radical": cmd_radical,
    "branch": cmd_branch, "central": cmd_central, "report": cmd_report,
}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    if args.jobs < 1:
        print("loopbrauer: --jobs must be at least 1", file=sys.stderr)
        return EXIT_PARSE
    try:
        return COMMANDS[args.command](args)
    except EvalAtZero as exc:
        print(f"loopbrauer: {exc}", file=sys.stderr)
        return EXIT_ZERO
    except (UsageError, DiagramParseError, dg.InvalidT, dg.IndexOutOfRange, ValueError) as exc:
        print(f"loopbrauer: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except (CorruptCache, CacheVersionMismatch) as exc:
        print(f"loopbrauer: cache error: {exc}", file=sys.stderr)
        return EXIT_MISMATCH


if __name__ == "__main__":
    sys.exit(main())
