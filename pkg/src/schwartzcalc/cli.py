"""schwartzcalc command line.

Exit codes: 0 success, 1 domain error (not admissible, no witness, parse error, ...),
2 usage error.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from typing import Optional, Sequence

from . import engine, table, witnesses
from . import seminorms as sn
from .errors import CalculusError
from .functions import membership
from .literals import parse_function, parse_seminorm
from .spaces import parse_space, space_tokens

GRAMMAR = """\
grammars:
  spaces      D S D_Lp[p] Bdot D_Linf OC OM E E' OM' OC' D'_L1 D'_Lq[q] S' D'
              (D_Lp and D'_Lq without brackets mean a generic exponent)
  expressions (name:SPACE), e * e, e conv e, fourier(e), d[i,...](e); '*' and 'conv'
              associate to the left
  functions   bump(r) plateau(r) gauss(a) cexp(c) chirp poly(c0,c1,...) const(v)
              weight(k) x, combined with + - * d[i](f) dilate(f,c) translate(f,x0)
  seminorms   pS(m,beta) pLp(m,p) pOM(m,<function>) pE(m,K) pD(m0,eps0)
  operations  mul | conv
"""


def _jsonable(x):
    """JSON-safe copy: non-finite floats become strings so the output is strict JSON."""
    if isinstance(x, float) and not math.isfinite(x):
        return "inf" if x > 0 else "-inf" if x < 0 else "nan"
    if isinstance(x, dict):
        return {k: _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    return x


def _dump(doc) -> str:
    return json.dumps(_jsonable(doc), indent=2, sort_keys=True)


def _grid(args) -> sn.GridSpec:
    return sn.GridSpec(radius=args.radius, points=args.points, rule=args.quad)


def _fmt(x: Optional[float]) -> str:
    return "-" if x is None else f"{x:.10g}"


# ---------------------------------------------------------------------------
# Subcommands: each returns the document to print.

def cmd_table(args):
    if args.format == "json":
        return table.emit_table("json", args.dimension)
    return table.emit_table("text", args.dimension)


def cmd_infer(args):
    res = engine.infer(engine.parse(args.expr, args.dimension))
    if args.format == "json":
        return _dump(res.to_dict())
    lines = [f"space:   {res.space.token}", f"verdict: {res.verdict.value.value} ({res.verdict.ref.label})",
             "trace:"]
    lines += [f"  {t.node}  ->  {t.space}  {t.verdict}  [{t.rule}; {t.ref}]" for t in res.trace]
    return "\n".join(lines)


def _map_args(args):
    n = args.dimension
    a, b = parse_space(args.a, n), parse_space(args.b, n)
    op = table.Op.parse(args.op)
    target = parse_space(args.target, n) if args.target else None
    return a, b, op, target


def cmd_classify(args):
    a, b, op, target = _map_args(args)
    if target is None:
        target = engine.result_space(a, b, op)[0]
    v = engine.classify_map(a, b, op, target)
    if args.format == "json":
        return _dump({"a": a.token, "b": b.token, "op": op.value, **v.to_dict()})
    return f"{a.token} x {b.token} --{op.value}--> {target.token}: {v.value.value} ({v.ref.label})"


def cmd_witness(args):
    if args.family:
        w = witnesses.family(args.family, args.dimension)
    else:
        if not (args.a and args.b and args.op):
            raise _Usage("witness needs A B OP or --family ID")
        a, b, op, target = _map_args(args)
        w = witnesses.witness_for(a, b, op, target)
    rep = witnesses.run_witness(w, steps=args.steps)
    if args.format == "json":
        return rep.to_json()
    lines = [f"family:  {rep.family} ({w.ref}, {rep.transfer})", f"map:     {rep.map}",
             f"{rep.parameter:>10} {'numerator':>18} {'denominator':>18} {'ratio':>18}"]
    for p, nu, de, r in zip(rep.params, rep.numerators, rep.denominators, rep.ratios):
        lines.append(f"{p:>10g} {nu:>18.10g} {de:>18.10g} {_fmt(r):>18}")
    lines.append(f"verdict: {rep.verdict}")
    lines += [f"note:    {n}" for n in rep.notes]
    return "\n".join(lines)


def cmd_seminorm(args):
    spec = parse_seminorm(args.spec, args.dimension)
    f = parse_function(args.function, args.dimension)
    value = sn.eval_seminorm(spec, f, _grid(args))
    if args.format == "json":
        return _dump({"seminorm": spec.literal, "function": f.literal(), "value": value,
                      "is_norm": sn.seminorm_is_norm(spec)})
    return f"{value:.12g}"


def cmd_membership(args):
    f = parse_function(args.function, args.dimension)
    space = parse_space(args.space, args.dimension)
    ok, why = membership(f, space)
    if args.format == "json":
        return _dump({"function": f.literal(), "space": space.token, "member": ok, "reason": why})
    return f"{'true' if ok else 'false'}: {why}"


def cmd_audit(args):
    rows = engine.audit_ehrenpreis(args.dimension)
    count = sum(r.verdict.value is table.Verdict.CONTINUOUS for r in rows)
    if args.format == "json":
        return _dump({"rows": [r.to_dict() for r in rows], "continuous": count, "total": len(rows)})
    return "\n".join([r.text() for r in rows] + [f"{count} of {len(rows)} continuous"])


def cmd_bound(args):
    a, b, op, target = _map_args(args)
    if target is None:
        target = engine.result_space(a, b, op)[0]
    rep = witnesses.check_continuity_bound(a, b, op, target, trials=args.trials, seed=args.seed)
    if args.format == "json":
        return _dump(rep.to_dict())
    if rep.skipped:
        return f"{rep.map}: skipped ({rep.note})"
    return (f"{rep.map}: {rep.violations} violations in {rep.trials} trials, "
            f"max ratio/C {rep.max_ratio:.6g} ({rep.ref}; {rep.note})")


def cmd_cauchy(args):
    rep = witnesses.oc_cauchy_check(args.l, args.r)
    if args.format == "json":
        return _dump(rep.to_dict())
    lines = [f"(r={r:g}, s={s:g}): {v:.6e}" for (r, s), v in zip(rep.pairs, rep.sups)]
    lines.append(f"strictly decreasing: {str(rep.decreasing).lower()}")
    lines.append(f"chirp in OC: {str(rep.chirp_in_OC).lower()} ({rep.reasons['OC']})")
    lines.append(f"chirp in OM: {str(rep.chirp_in_OM).lower()} ({rep.reasons['OM']})")
    return "\n".join(lines)


# ---------------------------------------------------------------------------
# Argument parsing

class _Usage(Exception):
    pass


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("--json", dest="format", action="store_const", const="json",
                        help="shorthand for --format json")
    common.add_argument("--dimension", "-n", type=int, default=1)

    grid = argparse.ArgumentParser(add_help=False)
    grid.add_argument("--radius", type=float, default=sn.DEFAULT_GRID.radius)
    grid.add_argument("--points", type=int, default=sn.DEFAULT_GRID.points)
    grid.add_argument("--quad", choices=("trapezoid", "simpson"), default=sn.DEFAULT_GRID.rule)

    p = argparse.ArgumentParser(prog="schwartzcalc", epilog=GRAMMAR,
                                formatter_class=argparse.RawDescriptionHelpFormatter,
                                description="Multiplication/convolution calculus over distribution spaces.")
    sub = p.add_subparsers(dest="command", required=True)
    kw = dict(parents=[common], epilog=GRAMMAR, formatter_class=argparse.RawDescriptionHelpFormatter)

    s = sub.add_parser("table", help="multiplier/convolutor table", **kw)
    s.set_defaults(run=cmd_table)

    s = sub.add_parser("infer", help="result space and verdict of an expression", **kw)
    s.add_argument("expr")
    s.set_defaults(run=cmd_infer)

    def map_args(s, optional=False):
        nargs = "?" if optional else None
        s.add_argument("a", nargs=nargs, help="left space")
        s.add_argument("b", nargs=nargs, help="right space")
        s.add_argument("op", nargs=nargs, choices=None, help="mul or conv")
        s.add_argument("target", nargs="?", help="target space (default: the natural result)")

    s = sub.add_parser("classify", help="continuity verdict of a bilinear map", **kw)
    map_args(s)
    s.set_defaults(run=cmd_classify)

    s = sub.add_parser("witness", help="run the counterexample family for a discontinuous map", **kw)
    map_args(s, optional=True)
    s.add_argument("--family", choices=witnesses.FAMILY_IDS)
    s.add_argument("--steps", type=int, default=5)
    s.set_defaults(run=cmd_witness)

    s = sub.add_parser("seminorm", help="evaluate a seminorm on a function", parents=[common, grid],
                       epilog=GRAMMAR, formatter_class=argparse.RawDescriptionHelpFormatter)
    s.add_argument("spec")
    s.add_argument("function")
    s.set_defaults(run=cmd_seminorm)

    s = sub.add_parser("membership", help="is a function in a space", **kw)
    s.add_argument("function")
    s.add_argument("space", help=" ".join(space_tokens()))
    s.set_defaults(run=cmd_membership)

    s = sub.add_parser("audit-ehrenpreis", help="the fourteen bilinear maps and their verdicts", **kw)
    s.set_defaults(run=cmd_audit)

    s = sub.add_parser("bound", help="spot-check the seminorm estimate of a continuous map", **kw)
    map_args(s)
    s.add_argument("--trials", type=int, default=100)
    s.add_argument("--seed", type=int, default=0)
    s.set_defaults(run=cmd_bound)

    s = sub.add_parser("cauchy", help="the O_C Cauchy display for the truncated chirps", **kw)
    s.add_argument("--l", type=int, default=1)
    s.add_argument("--r", type=float, nargs="+", default=[4, 8, 16, 32])
    s.set_defaults(run=cmd_cauchy)
    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code == 0 else 2
    if args.dimension < 1:
        print("error: dimension must be at least 1", file=sys.stderr)
        return 2
    try:
        out = args.run(args)
    except _Usage as exc:
        parser.print_usage(sys.stderr)
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (CalculusError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    print(out)
    return 0


if __name__ == "__main__":
    sys.exit(main())
