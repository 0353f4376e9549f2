"""Command line entry point: ``hopflab verify|derive|eval|qybe``."""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .brace import (
    check_braid_relation,
    check_skew_brace,
    linearize_solution,
    opposite_brace,
    qybe_solution_from_skew_brace,
    trivial_brace,
)
from .errors import HopfLabError, InstanceError, ParseError, PreconditionError, TypecheckError
from .groups import BUILTIN_GROUPS, builtin
from .instance import FUNCTORS, derive, derived_report, dumps, export, format_morphism, ingest, run, suite
from .linalg import FieldSpec

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2


def _emit(args, text: str, payload: dict) -> None:
    if args.json:
        print(json.dumps(payload, indent=1))
    else:
        print(text)


def cmd_verify(args) -> int:
    inst = ingest(args.file)
    only = set(args.filter.split(",")) if args.filter else None
    res = run(inst, only, Path(args.file).parent)
    _emit(args, res.render(args.verbose, args.timings), res.to_json(args.timings))
    return res.exit_code


def cmd_derive(args) -> int:
    inst = ingest(args.file)
    src_kind = FUNCTORS[args.functor][0]
    s = inst.get(args.target, src_kind, "--target")
    pre = suite(inst, s)
    if not pre.passed:
        print(pre.render(), file=sys.stderr)
        print(f"{args.target} fails its own suite; {args.functor} not applied", file=sys.stderr)
        return EXIT_FAIL
    kind, value, over = derive(inst, args.functor, args.target, args.over)
    rep = derived_report(kind, value, over)
    base = args.name or f"{args.functor.replace(chr(39), 'p')}_{args.target}"
    text = dumps(export(kind, value, inst.field, over, base))
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    print(f"[{'PASS' if rep.passed else 'FAIL'}] {args.functor}({args.target}): {rep.title}", file=sys.stderr)
    if not rep.passed:
        print(rep.render(), file=sys.stderr)
    return EXIT_OK if rep.passed else EXIT_FAIL


def cmd_eval(args) -> int:
    inst = ingest(args.file)
    m = inst.env(args.hopf).eval(args.expr)
    if args.json:
        print(json.dumps({"dom": str(m.dom), "cod": str(m.cod), "matrix": m.mat.literal()}, indent=1))
    else:
        print(format_morphism(m))
    return EXIT_OK


def cmd_qybe(args) -> int:
    g = builtin(args.group)
    b = trivial_brace(g) if args.brace == "trivial" else opposite_brace(g)
    brace_rep = check_skew_brace(b)
    if not brace_rep.passed:
        print(brace_rep.render())
        return EXIT_FAIL
    sol = qybe_solution_from_skew_brace(b)
    set_rep = check_braid_relation(sol)
    n = g.names
    lines = [f"solution on {args.group} from the {args.brace} brace ({sol.order ** 2} pairs)"]
    for x in range(sol.order):
        for y in range(sol.order):
            a, c = sol(x, y)
            lines.append(f"  c({n[x]}, {n[y]}) = ({n[a]}, {n[c]})")
    lines.append(set_rep.render())
    payload = {"group": args.group, "brace": args.brace, "set": set_rep.to_json(),
               "table": [[n[x], n[y], n[sol(x, y)[0]], n[sol(x, y)[1]]]
                         for x in range(sol.order) for y in range(sol.order)]}
    ok = set_rep.passed
    if args.field is not None:
        lin_rep = check_braid_relation(linearize_solution(sol, FieldSpec.parse(args.field), "H"))
        lines.append(lin_rep.render())
        payload["linear"] = lin_rep.to_json()
        ok = ok and lin_rep.passed
    _emit(args, "\n".join(lines), payload)
    return EXIT_OK if ok else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="hopflab", description="Exact checks for Hopf algebras, Hopf braces "
                                "and relative Rota-Baxter operators on finite instances.")
    sub = p.add_subparsers(dest="command", required=True)

    v = sub.add_parser("verify", help="run the tasks of an instance file")
    v.add_argument("file")
    v.add_argument("--filter", help="comma separated task kinds to run (e.g. rrb,hopf)")
    v.add_argument("--verbose", action="store_true", help="print every check, not only failures")
    v.add_argument("--timings", action="store_true", help="include wall time per task")
    v.add_argument("--json", action="store_true")
    v.set_defaults(func=cmd_verify)

    d = sub.add_parser("derive", help="apply a functor and export the result")
    d.add_argument("file")
    d.add_argument("--functor", required=True, choices=sorted(FUNCTORS))
    d.add_argument("--target", required=True)
    d.add_argument("--over", help="operator for V")
    d.add_argument("--name", help="base name for the exported bundle")
    d.add_argument("-o", "--out")
    d.set_defaults(func=cmd_derive, json=False)

    e = sub.add_parser("eval", help="evaluate a morphism expression")
    e.add_argument("file")
    e.add_argument("--expr", required=True)
    e.add_argument("--hopf", help="Hopf algebra whose maps are available without suffix")
    e.add_argument("--json", action="store_true")
    e.set_defaults(func=cmd_eval)

    q = sub.add_parser("qybe", help="braid solution of a skew brace on a builtin group")
    q.add_argument("--group", required=True, choices=BUILTIN_GROUPS)
    q.add_argument("--brace", required=True, choices=("trivial", "opp"))
    q.add_argument("--field", help="also check the linearization over this field, e.g. 7 or Q")
    q.add_argument("--json", action="store_true")
    q.set_defaults(func=cmd_qybe)
    return p


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (InstanceError, ParseError, TypecheckError) as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except PreconditionError as exc:
        print(f"precondition failed: {exc}", file=sys.stderr)
        if exc.report is not None:
            print(exc.report.render(), file=sys.stderr)
        return EXIT_FAIL
    except HopfLabError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
