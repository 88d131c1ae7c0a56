"""Command line interface: ``pibisim {check,distinguish,steps,forest,validate,sat}``.

Exit codes: 0 success (or bisimilar for ``check``), 1 not bisimilar or an
invalid certificate, 2 usage or parse error, 3 internal invariant violation.
Errors are reported on stderr as one JSON object.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import fixed_lts
from .bisim import BoundLog, bisim_check, bisim_forest, top_ctx
from .formulas import iter_df
from .open_lts import UnknownNameError, all_ctx, one_step_sym, one_step_sym_b
from .parser import ParseError, parse_formula, parse_process
from .pretty import pretty_abstraction, pretty_act, pretty_eqc, pretty_formula, pretty_process, pretty_step
from .sat import om_sat, validate_certificate
from .syntax import free_names_ordered

EXIT_OK, EXIT_NO, EXIT_USAGE, EXIT_INVARIANT = 0, 1, 2, 3


class InvariantViolation(RuntimeError):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        _report("usage", message)
        sys.exit(EXIT_USAGE)


def _report(kind: str, message: str, **extra) -> None:
    print(json.dumps({"error": kind, "message": message, **extra}, ensure_ascii=False), file=sys.stderr)


def _arg_text(arg: str) -> str:
    if arg.startswith("@"):
        return Path(arg[1:]).read_text(encoding="utf-8")
    return arg


def _proc(arg: str):
    return parse_process(_arg_text(arg))


def _form(arg: str):
    return parse_formula(_arg_text(arg))


def _ctx_for(*terms):
    return all_ctx(free_names_ordered(terms))


# -- subcommands ------------------------------------------------------------------


def cmd_check(args) -> int:
    p, q = _proc(args.p), _proc(args.q)
    if bisim_check(top_ctx(p, q), p, q):
        print("bisimilar")
        return EXIT_OK
    print("not-bisimilar")
    return EXIT_NO


def cmd_distinguish(args) -> int:
    p, q = _proc(args.p), _proc(args.q)
    ctx = top_ctx(p, q)
    certs = []
    for fl, fr in iter_df(bisim_forest(ctx, p, q)):
        ok = validate_certificate(ctx, p, q, fl, fr)
        if not ok:
            raise InvariantViolation(
                f"certificate failed validation: {pretty_formula(fl)} / {pretty_formula(fr)}")
        certs.append({"formula_left": pretty_formula(fl), "formula_right": pretty_formula(fr), "validated": ok})
        if not args.all:
            break
    bisimilar = not certs
    if bisimilar and not bisim_check(ctx, p, q):
        raise InvariantViolation("no certificate for a non-bisimilar pair")
    if args.format == "json":
        doc = {"left": pretty_process(p), "right": pretty_process(q), "bisimilar": bisimilar, "certificates": certs}
        print(json.dumps(doc, ensure_ascii=False))
    elif bisimilar:
        print("bisimilar")
    else:
        for c in certs:
            print(f"left:  {c['formula_left']}")
            print(f"right: {c['formula_right']}")
    return EXIT_OK


def cmd_steps(args) -> int:
    p = _proc(args.p)
    if args.mode == "fixed":
        steps = fixed_lts.one_step_b(p) if args.bound else fixed_lts.one_step(p)
        for a, r in steps:
            print(pretty_step(a, r))
    else:
        ctx = top_ctx(p, p)
        steps = one_step_sym_b(ctx, p) if args.bound else one_step_sym(ctx, p)
        for sigma, (a, r) in steps:
            print(pretty_step(a, r, sigma))
    return EXIT_OK


def _render_forest(forest, depth: int, max_depth: int, out: list[str]) -> None:
    if depth >= max_depth:
        if forest:
            out.append("  " * depth + "...")
        return
    for t in forest:
        log = t.log
        # leaders sit at even depths, followers at odd ones
        arrow = "->" if depth % 2 == 0 else "~>"
        res = pretty_abstraction(log.residual) if isinstance(log, BoundLog) else pretty_process(log.residual)
        out.append(f"{'  ' * depth}{arrow} {t.side.value} {pretty_eqc(log.sigma)} {pretty_act(log.act)}  {res}")
        _render_forest(t.children, depth + 1, max_depth, out)


def cmd_forest(args) -> int:
    p, q = _proc(args.p), _proc(args.q)
    out: list[str] = []
    _render_forest(bisim_forest(top_ctx(p, q), p, q), 0, args.max_depth, out)
    print("\n".join(out) if out else "(no steps)")
    return EXIT_OK


def cmd_validate(args) -> int:
    p, q, fl, fr = _proc(args.p), _proc(args.q), _form(args.fl), _form(args.fr)
    ctx = _ctx_for(p, q, fl, fr)
    checks = [
        ("left |= formula_left", om_sat(ctx, (), p, fl), True),
        ("right |= formula_left", om_sat(ctx, (), q, fl), False),
        ("right |= formula_right", om_sat(ctx, (), q, fr), True),
        ("left |= formula_right", om_sat(ctx, (), p, fr), False),
    ]
    for label, got, _ in checks:
        print(f"{label}: {str(got).lower()}")
    valid = all(got == want for _, got, want in checks)
    print("valid" if valid else "invalid")
    return EXIT_OK if valid else EXIT_NO


def cmd_sat(args) -> int:
    p, f = _proc(args.p), _form(args.f)
    print(str(om_sat(_ctx_for(p, f), (), p, f)).lower())
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="pibisim", description="Open bisimulation checker for the finite pi-calculus.")
    sub = ap.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("check", help="decide open bisimilarity")
    s.add_argument("p")
    s.add_argument("q")
    s.set_defaults(run=cmd_check)

    s = sub.add_parser("distinguish", help="print distinguishing formulae")
    s.add_argument("p")
    s.add_argument("q")
    s.add_argument("--all", action="store_true", help="emit every certificate, not only the first")
    s.add_argument("--format", choices=("text", "json"), default="text")
    s.set_defaults(run=cmd_distinguish)

    s = sub.add_parser("steps", help="list one-step transitions")
    s.add_argument("p")
    s.add_argument("--mode", choices=("fixed", "symbolic"), default="fixed")
    s.add_argument("--bound", action="store_true", help="list bound steps instead of free ones")
    s.set_defaults(run=cmd_steps)

    s = sub.add_parser("forest", help="render the bisimulation step forest")
    s.add_argument("p")
    s.add_argument("q")
    s.add_argument("--max-depth", type=int, default=6)
    s.set_defaults(run=cmd_forest)

    s = sub.add_parser("validate", help="check a certificate pair")
    for name in ("p", "q", "fl", "fr"):
        s.add_argument(name)
    s.set_defaults(run=cmd_validate)

    s = sub.add_parser("sat", help="model check one formula")
    s.add_argument("p")
    s.add_argument("f")
    s.set_defaults(run=cmd_sat)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.run(args)
    except ParseError as e:
        _report("parse", e.message, line=e.line, column=e.column)
        return EXIT_USAGE
    except (UnknownNameError, OSError) as e:
        _report("usage", str(e))
        return EXIT_USAGE
    except InvariantViolation as e:
        _report("invariant", str(e))
        return EXIT_INVARIANT


if __name__ == "__main__":
    sys.exit(main())
