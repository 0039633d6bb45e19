"""Command line interface.

Exit codes: 0 success/accepted/sat, 1 rejected/unsat/audit-failed, 2 usage
or malformed input, 3 environment or internal failure.  Errors are printed
to stderr as ``ERROR:<category>: <message>``.
"""

from __future__ import annotations

import argparse
import json
import sys
from math import ceil
from pathlib import Path

from .bounds import (min_m_certifying, multiset_lower_bound,
                     signature_audit_report, turan_independence_floor)
from .errors import (ContractError, DecodeError, FormatError, ParameterError,
                     RangeError, SolverEnvironmentError, SolverProtocolError)
from .fixtures import fixture_text
from .orders_io import emit_orders_text, read_orders_file, write_orders_file
from .posets import BooleanLattice, SingletonPoset, build_poset
from .realizers import RealizerFamily, build_bn_realizer, verify_local_realizer
from .sat import (VarMap, encode, parse_model_text, solve_instance,
                  ldim_certificate, write_dimacs)
from .singletons import build_singleton_plan, singleton_frequency_bound


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.exit(2, f"ERROR:usage: {message}\n")


def _print_report_text(report, out=None) -> None:
    out = out or sys.stdout
    out.write(f"accepted: {'true' if report.accepted else 'false'}\n")
    out.write(f"frequency: {report.frequency}\n")
    out.write(f"size: {report.size}\n")
    if report.violations:
        out.write(f"violations: {len(report.violations)}\n")
        for v in report.violations:
            ple = "-" if v.ple is None else str(v.ple)
            out.write(f"  {v.kind} a={v.a} b={v.b} ple={ple}\n")


def _cmd_verify(args) -> int:
    P = build_poset(args.poset)
    family = RealizerFamily(read_orders_file(args.orders))
    report = verify_local_realizer(P, family)
    if args.format == "json":
        print(report.to_json(indent=2))
    else:
        _print_report_text(report)
    return 0 if report.accepted else 1


def _cmd_build(args) -> int:
    P = build_poset(args.poset)
    summary: list[str] = [f"poset: {P.kind}"]
    if isinstance(P, BooleanLattice):
        if args.d is not None:
            raise ParameterError("--d applies to singleton posets only")
        family = build_bn_realizer(P.n)
        bound = ceil(5 * P.n / 7)
        report = verify_local_realizer(P, family)
        summary += [f"frequency: {report.frequency}", f"bound: {bound}",
                    f"size: {report.size}"]
    elif isinstance(P, SingletonPoset):
        plan = build_singleton_plan(P.n, args.d)
        family = plan.family()
        report = verify_local_realizer(P, family)
        fb = max(singleton_frequency_bound(P.n, plan.partition.d))
        summary += [f"d: {plan.partition.d}", f"r: {plan.partition.r}",
                    f"frequency: {report.frequency}",
                    f"frequency-bound: {fb}", f"size: {report.size}"]
    else:
        raise ParameterError(
            f"build supports boolean:<n> and singleton:<n>, got {P.kind}")
    if not report.accepted:
        raise ContractError(
            f"built family fails verification for {P.kind}")  # pragma: no cover
    if args.out:
        write_orders_file(args.out, family)
        summary.append(f"orders: {args.out}")
        print("\n".join(summary))
    else:
        sys.stdout.write(emit_orders_text(family))
        print("\n".join(summary), file=sys.stderr)
    return 0


def _cmd_encode(args) -> int:
    P = build_poset(args.poset)
    formula, vm = encode(P, args.k, args.d)
    if args.out:
        write_dimacs(formula, vm, args.out, args.map)
        lines = [f"variables: {formula.variable_count}",
                 f"clauses: {formula.clause_count}", f"cnf: {args.out}"]
        if args.map:
            lines.append(f"map: {args.map}")
        print("\n".join(lines))
    else:
        write_dimacs(formula, vm, sys.stdout, args.map)
    return 0


def _solve_output(args, report, family) -> None:
    if args.format == "json":
        payload = {"status": "sat", "frequency": report.frequency,
                   "size": report.size,
                   "orders": [list(p) for p in family]}
        print(json.dumps(payload, indent=2))
        if args.out:
            write_orders_file(args.out, family)
        return
    summary = [f"status: sat", f"frequency: {report.frequency}",
               f"size: {report.size}"]
    if args.out:
        write_orders_file(args.out, family)
        summary.append(f"orders: {args.out}")
        print("\n".join(summary))
    else:
        sys.stdout.write(emit_orders_text(family))
        print("\n".join(summary), file=sys.stderr)


def _cmd_solve(args) -> int:
    P = build_poset(args.poset)
    if args.model:
        text = Path(args.model).read_text(encoding="utf-8")
        result = parse_model_text(text)
        if result is None:
            raise SolverProtocolError(
                f"no solver status line found in {args.model}")
        if result.status == "sat":
            from .sat import decode_realizer
            vm = VarMap(P, args.k)
            family = decode_realizer(result.model, vm, P)
            report = verify_local_realizer(P, family)
            if not report.accepted or report.frequency > args.d:
                raise DecodeError("decoded family fails verification")
        else:
            family = None
    else:
        result, family = solve_instance(P, args.k, args.d, args.solver)
        if family is not None:
            report = verify_local_realizer(P, family)
    if result.status != "sat":
        if args.format == "json":
            print(json.dumps({"status": result.status}, indent=2))
        else:
            print(f"status: {result.status}")
        return 1
    _solve_output(args, report, family)
    return 0


def _cmd_ldim(args) -> int:
    P = build_poset(args.poset)
    d, family = ldim_certificate(P, args.d_max, args.solver)
    print(d)
    if args.out:
        write_orders_file(args.out, family)
    return 0


def _require(args, what: str, *names: str) -> None:
    for name in names:
        if getattr(args, name) is None:
            raise ParameterError(f"analyze {what} requires --{name}")


def _cmd_analyze(args) -> int:
    what = args.what
    if what == "multiset-bound":
        _require(args, what, "n", "m")
        print(multiset_lower_bound(args.n, args.m).to_json(indent=2))
        return 0
    if what == "min-m":
        _require(args, what, "n")
        print(multiset_lower_bound(args.n, min_m_certifying(args.n))
              .to_json(indent=2))
        return 0
    if what == "turan":
        _require(args, what, "n", "size")
        print(turan_independence_floor(args.n, args.size).to_json(indent=2))
        return 0
    # signature
    _require(args, what, "n", "m", "orders")
    family = RealizerFamily(read_orders_file(args.orders))
    report = signature_audit_report(args.n, args.m, family)
    print(report.to_json(indent=2))
    return 0 if report.ok else 1


def _cmd_tables(args) -> int:
    text = fixture_text(args.which)
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    return 0


def _build_parser() -> _Parser:
    parser = _Parser(prog="ldimkit",
                     description="local dimension toolkit for posets")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify", help="verify a local realizer")
    p.add_argument("--poset", required=True)
    p.add_argument("--orders", required=True)
    p.add_argument("--format", choices=["text", "json"], default="text")
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("build", help="build a realizer for a known family")
    p.add_argument("--poset", required=True)
    p.add_argument("--d", type=int, default=None,
                   help="block width for singleton posets")
    p.add_argument("-o", "--out", default=None)
    p.set_defaults(func=_cmd_build)

    p = sub.add_parser("encode", help="emit a DIMACS CNF instance")
    p.add_argument("--poset", required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--d", type=int, required=True)
    p.add_argument("-o", "--out", default=None)
    p.add_argument("--map", default=None,
                   help="also write a variable map file")
    p.set_defaults(func=_cmd_encode)

    p = sub.add_parser("solve", help="solve one (k, d) instance")
    p.add_argument("--poset", required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--solver", default=None)
    p.add_argument("--model", default=None,
                   help="decode a saved solver output instead of running one")
    p.add_argument("-o", "--out", default=None)
    p.add_argument("--format", choices=["text", "json"], default="text")
    p.set_defaults(func=_cmd_solve)

    p = sub.add_parser("ldim", help="exact local dimension via SAT search")
    p.add_argument("--poset", required=True)
    p.add_argument("--d-max", type=int, default=None)
    p.add_argument("--solver", default=None)
    p.add_argument("-o", "--out", default=None)
    p.set_defaults(func=_cmd_ldim)

    p = sub.add_parser("analyze", help="evaluate lower-bound formulas")
    p.add_argument("what", choices=["multiset-bound", "min-m", "turan",
                                    "signature"])
    p.add_argument("--n", type=int, default=None)
    p.add_argument("--m", type=int, default=None)
    p.add_argument("--size", type=int, default=None)
    p.add_argument("--orders", default=None)
    p.set_defaults(func=_cmd_analyze)

    p = sub.add_parser("tables", help="print an embedded certificate table")
    p.add_argument("which", choices=["b4", "b7"])
    p.add_argument("-o", "--out", default=None)
    p.set_defaults(func=_cmd_tables)

    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except (ParameterError, FormatError) as exc:
        print(f"ERROR:usage: {exc}", file=sys.stderr)
        return 2
    except RangeError as exc:
        print(f"ERROR:input: {exc}", file=sys.stderr)
        return 2
    except (SolverEnvironmentError, SolverProtocolError) as exc:
        print(f"ERROR:environment: {exc}", file=sys.stderr)
        return 3
    except (ContractError, DecodeError) as exc:
        print(f"ERROR:internal: {exc}", file=sys.stderr)
        return 3
    except OSError as exc:
        print(f"ERROR:environment: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
