"""Command-line front end.

    dunklops verify   --k 1..6 [--suite PAT] [--mutate NAME] [--oracle]
    dunklops show     --k 2 --op Dphi          (or positional expressions)
    dunklops norm     --k 3 "I*R*I"
    dunklops commute  --k 3 "Dr" "Dphi"
    dunklops adjoint  --k 3 "Dr"
    dunklops project  --k 4 "HkExt"
    dunklops oracle   --k 4 "HkExt" "HkExtViaDr" [--trials N] [--tol X]

Expressions are first matched whole against the named-operator registry
(R, I, S, Dr, Dphi, Hk, Xk, HkExt, HkExtViaDr) and otherwise parsed with
the expression grammar.  ``--k`` accepts a single value, a comma list
("1,3,5") or a range ("1..6"); the expression commands want exactly one k.
Exit codes: 0 all pass, 1 any fail, 2 usage or parse error.  The
DUNKLOPS_MAX_K environment variable overrides the ceiling on k.
"""

from __future__ import annotations

import argparse
import json
import sys

from .builders import MUTATIONS, OPERATORS
from .cyclofield import ctx_new, max_k_ceiling
from .errors import DunklopsError, ParseError
from .exprparse import parse_op, pretty
from .identities import run_suite
from .opalgebra import commutator
from .oracle import DEFAULT_SEED, numeric_check

__all__ = ["main", "parse_k_list"]


def parse_k_list(text: str, max_k: int) -> list:
    """Expand "3", "1,3,5" or "1..6" into a validated list of k values."""
    text = text.strip()
    try:
        if ".." in text:
            lo_txt, hi_txt = text.split("..", 1)
            lo, hi = int(lo_txt), int(hi_txt)
            ks = list(range(lo, hi + 1))
        else:
            ks = [int(part) for part in text.split(",")]
    except ValueError:
        raise ValueError(f"cannot parse k list {text!r}")
    if not ks:
        raise ValueError(f"empty k list {text!r}")
    for k in ks:
        if not 1 <= k <= max_k:
            raise ValueError(f"k={k} outside [1, {max_k}]"
                             " (set DUNKLOPS_MAX_K to change the ceiling)")
    return ks


def _resolve(text: str, ctx):
    name = text.strip()
    if name in OPERATORS:
        return OPERATORS[name](ctx)
    return parse_op(text, ctx)


def _print_parse_error(exc: ParseError) -> None:
    print(f"parse error: {exc.args[0]} (at position {exc.pos})",
          file=sys.stderr)
    if exc.text:
        print("  " + exc.text, file=sys.stderr)
        print("  " + " " * exc.pos + "^", file=sys.stderr)


def _report_lines(reports) -> list:
    lines = []
    for r in reports:
        line = (f"{r.status.upper():7} k={r.k:<2} {r.check_id:34} "
                f"residual={r.residual_term_count} ({r.elapsed_ms} ms)")
        if r.status == "fail" and r.residual_sample:
            line += f"\n        sample: {r.residual_sample}"
        lines.append(line)
    return lines


def _emit(reports, args) -> None:
    if args.json:
        payload = json.dumps([r.to_dict() for r in reports], indent=2)
    else:
        payload = "\n".join(_report_lines(reports))
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(payload + "\n")
    else:
        print(payload)


def _check_numeric_flags(args) -> None:
    if args.trials < 1:
        raise ValueError("--trials must be at least 1")
    if args.tol <= 0:
        raise ValueError("--tol must be positive")


def cmd_verify(args) -> int:
    _check_numeric_flags(args)
    ks = parse_k_list(args.k, max_k_ceiling())
    reports = run_suite(
        ks, suite_filter=args.suite, mutation=args.mutate,
        include_optional=bool(args.suite), oracle=args.oracle,
        trials=args.trials, tol=args.tol, seed=args.seed,
    )
    _emit(reports, args)
    counts = {"pass": 0, "fail": 0, "skipped": 0}
    for r in reports:
        counts[r.status] += 1
    if not args.json and not args.out:
        print(f"-- {counts['pass']} pass, {counts['fail']} fail, "
              f"{counts['skipped']} skipped")
    return 1 if counts["fail"] else 0


def _single_k(args) -> int:
    ks = parse_k_list(args.k, max_k_ceiling())
    if len(ks) != 1:
        raise ValueError("this command wants exactly one k")
    return ks[0]


def cmd_show(args) -> int:
    ctx = ctx_new(_single_k(args))
    names = list(args.expr)
    if args.op:
        names.insert(0, args.op)
    if not names:
        raise ValueError("nothing to show: give --op NAME or an expression")
    for name in names:
        print(pretty(_resolve(name, ctx)))
    return 0


def cmd_norm(args) -> int:
    ctx = ctx_new(_single_k(args))
    print(pretty(_resolve(args.expr, ctx)))
    return 0


def cmd_commute(args) -> int:
    ctx = ctx_new(_single_k(args))
    lhs, rhs = _resolve(args.lhs, ctx), _resolve(args.rhs, ctx)
    print(pretty(commutator(lhs, rhs)))
    return 0


def cmd_adjoint(args) -> int:
    ctx = ctx_new(_single_k(args))
    print(pretty(_resolve(args.expr, ctx).adjoint()))
    return 0


def cmd_project(args) -> int:
    ctx = ctx_new(_single_k(args))
    print(pretty(_resolve(args.expr, ctx).project_identity()))
    return 0


def cmd_oracle(args) -> int:
    _check_numeric_flags(args)
    ctx = ctx_new(_single_k(args))
    lhs, rhs = _resolve(args.lhs, ctx), _resolve(args.rhs, ctx)
    report = numeric_check(lhs, rhs, trials=args.trials, tol=args.tol,
                           seed=args.seed)
    if args.json:
        print(json.dumps(report.to_dict(), indent=2))
    else:
        print(f"{report.status}: max rel dev {report.max_rel_dev:.3e} "
              f"over {report.trials} trials (tol {report.tol:g}, "
              f"seed {report.seed})")
    return 0 if report.status == "pass" else 1


def _build_parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(
        prog="dunklops",
        description="Exact verification suite for dihedral differential-"
                    "difference operators.")
    sub = top.add_subparsers(dest="command", required=True)

    def add_k(p):
        p.add_argument("--k", required=True,
                       help="k value, comma list, or range like 1..6")

    verify = sub.add_parser("verify", help="run the identity suite")
    add_k(verify)
    verify.add_argument("--suite", help="comma list of check-id globs")
    verify.add_argument("--mutate", choices=sorted(MUTATIONS),
                        help="apply a documented mutation (expect failures)")
    verify.add_argument("--oracle", action="store_true",
                        help="also run the numeric shadow of every row")
    verify.add_argument("--trials", type=int, default=100)
    verify.add_argument("--tol", type=float, default=1e-9)
    verify.add_argument("--seed", type=int, default=DEFAULT_SEED)
    verify.add_argument("--json", action="store_true",
                        help="emit the reports as a JSON array")
    verify.add_argument("--out", help="write the report to a file")
    verify.set_defaults(fn=cmd_verify)

    show = sub.add_parser("show", help="print named or ad-hoc operators")
    add_k(show)
    show.add_argument("--op", help="a name from the operator registry")
    show.add_argument("expr", nargs="*", help="operator expressions")
    show.set_defaults(fn=cmd_show)

    norm = sub.add_parser("norm", help="normal-order an expression")
    add_k(norm)
    norm.add_argument("expr")
    norm.set_defaults(fn=cmd_norm)

    comm = sub.add_parser("commute", help="commutator of two expressions")
    add_k(comm)
    comm.add_argument("lhs")
    comm.add_argument("rhs")
    comm.set_defaults(fn=cmd_commute)

    adj = sub.add_parser("adjoint", help="formal adjoint of an expression")
    add_k(adj)
    adj.add_argument("expr")
    adj.set_defaults(fn=cmd_adjoint)

    proj = sub.add_parser("project", help="identity-representation "
                                          "projection of an expression")
    add_k(proj)
    proj.add_argument("expr")
    proj.set_defaults(fn=cmd_project)

    orc = sub.add_parser("oracle", help="numeric comparison of two "
                                        "expressions")
    add_k(orc)
    orc.add_argument("lhs")
    orc.add_argument("rhs")
    orc.add_argument("--trials", type=int, default=100)
    orc.add_argument("--tol", type=float, default=1e-9)
    orc.add_argument("--seed", type=int, default=DEFAULT_SEED)
    orc.add_argument("--json", action="store_true")
    orc.set_defaults(fn=cmd_oracle)

    return top


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.fn(args)
    except ParseError as exc:
        _print_parse_error(exc)
        return 2
    except (ValueError, DunklopsError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":  # pragma: no cover - exercised via entry point
    sys.exit(main())
