"""Command line front end.

    higher-skein eval --pd FILE --invariant {conway,homfly,p} [--order N]
    higher-skein series [--order N]
    higher-skein table --pd FILE --lmax L --mmax M [--order N]
    higher-skein resolve --pd FILE [--merged]
    higher-skein verify --suite {series,skein,higher,eightt,chord,all} [--seed S] [--format json]

Exit status: 0 success, 1 a verification failed, 2 bad usage or input.
"""

from __future__ import annotations

import argparse
import json
import sys

from .algebra import DEFAULT_ORDER, AlgebraError
from .diagram import DiagramError, canonical_encode, load_diagram, resolution_terms, resolve
from .higher import WindowError, nabla_table
from .series import alpha_beta_series, gamma_series
from .skein import INVARIANTS, SkeinContext

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2
SUITE_NAMES = ("series", "skein", "higher", "eightt", "chord", "all")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _load(path):
    try:
        return load_diagram(path)
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None
    except DiagramError as exc:
        raise UsageError(f"{path}: {exc}") from None


def _context(order):
    if order < 2:
        raise UsageError("--order must be at least 2")
    return SkeinContext(order)


def cmd_eval(args, out):
    d = _load(args.pd)
    ctx = _context(args.order)
    if d.is_singular():
        raise UsageError("eval needs a diagram without double points; use resolve")
    print(ctx.evaluate(args.invariant, d), file=out)
    return EXIT_OK


def cmd_series(args, out):
    if args.order < 2:
        raise UsageError("--order must be at least 2")
    alpha, beta = alpha_beta_series(args.order)
    print(f"alpha = {alpha}", file=out)
    print(f"beta = {beta}", file=out)
    print(f"gamma = {gamma_series(args.order)}", file=out)
    return EXIT_OK


def table_json(d, lmax, mmax, ctx):
    table = nabla_table(d, lmax, mmax, ctx)
    entries = [{"l": l, "m": m, "poly": str(table[l, m])} for (l, m) in sorted(table)]
    return {"link": d.name, "N": ctx.order, "entries": entries}


def cmd_table(args, out):
    d = _load(args.pd)
    ctx = _context(args.order)
    if args.lmax < 0 or args.mmax < 0:
        raise UsageError("--lmax and --mmax must be nonnegative")
    try:
        doc = table_json(d, args.lmax, args.mmax, ctx)
    except WindowError as exc:
        raise UsageError(str(exc)) from None
    print(json.dumps(doc, indent=2), file=out)
    return EXIT_OK


def cmd_resolve(args, out):
    d = _load(args.pd)
    if args.merged:
        print(resolve(d), file=out)
        return EXIT_OK
    for coeff, term in resolution_terms(d):
        print(f"({coeff}) * [{canonical_encode(term).decode()}]", file=out)
    return EXIT_OK


def cmd_verify(args, out):
    from .verify import run_suite

    if args.order < 4:
        raise UsageError("verify needs --order of at least 4")
    reports = run_suite(args.suite, seed=args.seed, order=args.order)
    if args.format == "json":
        doc = [{"check": r.name, "passed": r.passed, "failures": r.failures} for r in reports]
        print(json.dumps(doc, indent=2), file=out)
    else:
        for r in reports:
            print(r, file=out)
        passed = sum(r.passed for r in reports)
        print(f"{passed}/{len(reports)} checks passed", file=out)
    return EXIT_OK if all(r.passed for r in reports) else EXIT_FAIL


def build_parser():
    p = _Parser(prog="higher-skein", description="Skein invariants of links and their higher Conway parts.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    e = sub.add_parser("eval", help="evaluate an invariant on a diagram file")
    e.add_argument("--pd", required=True)
    e.add_argument("--invariant", required=True, choices=INVARIANTS)
    e.add_argument("--order", type=int, default=DEFAULT_ORDER)
    e.set_defaults(func=cmd_eval)

    s = sub.add_parser("series", help="print alpha, beta, gamma")
    s.add_argument("--order", type=int, default=DEFAULT_ORDER)
    s.set_defaults(func=cmd_series)

    t = sub.add_parser("table", help="JSON table of nabla_{l,m}")
    t.add_argument("--pd", required=True)
    t.add_argument("--lmax", type=int, required=True)
    t.add_argument("--mmax", type=int, required=True)
    t.add_argument("--order", type=int, default=DEFAULT_ORDER)
    t.set_defaults(func=cmd_table)

    r = sub.add_parser("resolve", help="resolve every double point")
    r.add_argument("--pd", required=True)
    r.add_argument("--merged", action="store_true", help="merge equal diagrams")
    r.set_defaults(func=cmd_resolve)

    v = sub.add_parser("verify", help="run a verification suite")
    v.add_argument("--suite", required=True, choices=SUITE_NAMES)
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--order", type=int, default=DEFAULT_ORDER)
    v.add_argument("--format", choices=("text", "json"), default="text")
    v.set_defaults(func=cmd_verify)
    return p


def main(argv=None, out=None):
    out = out or sys.stdout
    try:
        args = build_parser().parse_args(argv)
        return args.func(args, out)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (AlgebraError, DiagramError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
