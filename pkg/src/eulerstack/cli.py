"""Command-line front end.

Exit status: 0 on success, 1 when the computation itself is undefined or
fails a check, 2 for usage and parse errors.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from . import descriptors as D
from .cartesian import fiber_product
from .errors import DescriptorError, EulerStackError
from .groupcat import Weight
from .laws import SUITES, format_report, run_suites
from .orbifold import check_dhvw, stringy_euler
from .pushpull import compose, pullback, pushforward_lcf, pushforward_naive, pushforward_stack, pushforward_weighted
from .strata import chi_naive_weighted, chi_weighted

EXIT_OK, EXIT_DOMAIN, EXIT_USAGE = 0, 1, 2


class _Usage(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _Usage(f"{self.prog}: {message}")


def _weight(name: str) -> Weight:
    try:
        return Weight.parse(name)
    except ValueError as exc:
        raise _Usage(str(exc)) from None


def _emit_json(path: str | None, obj) -> str:
    text = D.dumps(obj)
    if path:
        Path(path).write_text(text + "\n")
        return f"wrote {path}"
    return text


# ---------------------------------------------------------------------------
# Commands. Each returns (text for humans, JSON-able result, exit code).


def cmd_chi(a):
    stack = D.load_stack(a.stack)
    f = D.load_fn(a.fn, stack) if a.fn else stack.everything().indicator()
    w = _weight(a.weight)
    val = chi_naive_weighted(f) if w is Weight.NAIVE else chi_weighted(f, w)
    s = D.rat_to_str(val)
    return s, s, EXIT_OK


def _push_mode(mode: str):
    if mode == "naive":
        return "naive", None
    if mode == "stk":
        return "stk", None
    if mode.startswith("w:"):
        return "w", _weight(mode[2:])
    raise _Usage(f"unknown push mode {mode!r}; expected naive, stk or w:<weight>")


def cmd_push(a):
    m = D.load_morphism(a.morphism)
    f = D.load_fn(a.fn, m.source)
    kind, w = _push_mode(a.mode)
    if a.lcf:
        if kind == "w":
            raise _Usage("--lcf supports the naive and stk modes only")
        out = pushforward_lcf(m, f, "naive" if kind == "naive" else "stack")
    elif kind == "naive":
        out = pushforward_naive(m, f)
    elif kind == "stk":
        out = pushforward_stack(m, f)
    else:
        out = pushforward_weighted(m, f, w)
    obj = D.fn_to_json(out)
    return _emit_json(a.output, obj), obj, EXIT_OK


def cmd_pull(a):
    m = D.load_morphism(a.morphism)
    f = D.load_fn(a.fn, m.target)
    obj = D.fn_to_json(pullback(m, f))
    return _emit_json(a.output, obj), obj, EXIT_OK


def cmd_compose(a):
    m1, m2 = D.load_morphism(a.m1), D.load_morphism(a.m2)
    obj = D.morphism_to_json(compose(m1, m2))
    return _emit_json(a.output, obj), obj, EXIT_OK


def cmd_fibprod(a):
    sq = fiber_product(D.load_morphism(a.phi), D.load_morphism(a.psi))
    obj = {"E": D.stack_to_json(sq.E), "eta": D.morphism_to_json(sq.eta), "theta": D.morphism_to_json(sq.theta)}
    if a.output_dir:
        out = Path(a.output_dir)
        out.mkdir(parents=True, exist_ok=True)
        for name, part in obj.items():
            (out / f"{name}.json").write_text(D.dumps(part) + "\n")
        text = f"wrote {', '.join(str(out / f'{n}.json') for n in obj)}"
    else:
        text = D.dumps(obj)
    return text, obj, EXIT_OK


def cmd_stringy(a):
    g = D.load_gset(a.gset)
    if not a.check:
        s = D.rat_to_str(stringy_euler(g))
        return f"chi(M,G) = {s}", {"stringy": s}, EXIT_OK
    rep = check_dhvw(g)
    res = {"stringy": D.rat_to_str(rep.stringy), "orbifold": D.rat_to_str(rep.orbifold), "ok": rep.ok}
    return str(rep), res, EXIT_OK if rep.ok else EXIT_DOMAIN


def cmd_check(a):
    names = a.suite or list(SUITES)
    if "all" in names:
        names = list(SUITES)
    for n in names:
        if n not in SUITES:
            raise _Usage(f"unknown suite {n!r}; expected one of {', '.join(SUITES)} or all")
    results = run_suites(names, a.seed, a.cases)
    ok = all(r.ok for r in results)
    obj = {"seed": a.seed, "suites": [r.to_json() for r in results], "ok": ok}
    return format_report(results, a.seed), obj, EXIT_OK if ok else EXIT_DOMAIN


# ---------------------------------------------------------------------------


def _default_seed() -> int:
    raw = os.environ.get("EULERSTACK_SEED", "0")
    try:
        return int(raw)
    except ValueError:
        raise _Usage(f"EULERSTACK_SEED must be an integer, got {raw!r}") from None


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="eulerstack", description="Exact constructible-function calculus on stratified stacks.")
    p.add_argument("--json", action="store_true", help="emit a JSON envelope {command, inputs, result|error}")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    c = sub.add_parser("chi", help="Euler characteristic of a stack or of a function on it")
    c.add_argument("stack")
    c.add_argument("-f", "--fn", help="function descriptor (default: the constant 1)")
    c.add_argument("--weight", default="naive", help="naive, e, inv-e or o")
    c.set_defaults(run=cmd_chi)

    c = sub.add_parser("push", help="push a function forward along a morphism")
    c.add_argument("morphism")
    c.add_argument("fn")
    c.add_argument("--mode", default="naive", help="naive, stk or w:<weight>")
    c.add_argument("--lcf", action="store_true", help="allow a nonzero default on the remainder")
    c.add_argument("-o", "--output")
    c.set_defaults(run=cmd_push)

    c = sub.add_parser("pull", help="pull a function back along a morphism")
    c.add_argument("morphism")
    c.add_argument("fn")
    c.add_argument("-o", "--output")
    c.set_defaults(run=cmd_pull)

    c = sub.add_parser("compose", help="composite M2 o M1")
    c.add_argument("m1")
    c.add_argument("m2")
    c.add_argument("-o", "--output")
    c.set_defaults(run=cmd_compose)

    c = sub.add_parser("fibprod", help="fibre product of PHI and PSI over their common target")
    c.add_argument("phi")
    c.add_argument("psi")
    c.add_argument("-o", "--output-dir", help="write E.json, eta.json and theta.json here")
    c.set_defaults(run=cmd_fibprod)

    c = sub.add_parser("stringy", help="orbifold Euler characteristic of a finite G-set")
    c.add_argument("gset")
    c.add_argument("--check", action="store_true", help="compare with chi_orb of the quotient stack")
    c.set_defaults(run=cmd_stringy)

    c = sub.add_parser("check", help="run seeded property suites")
    c.add_argument("--suite", action="append", help=f"one of {', '.join(SUITES)} or all (repeatable)")
    c.add_argument("--seed", type=int, default=None, help="default: $EULERSTACK_SEED or 0")
    c.add_argument("--cases", type=int, default=100)
    c.set_defaults(run=cmd_check)
    return p


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    want_json = "--json" in argv
    command = None
    inputs: dict = {}
    try:
        a = build_parser().parse_args(argv)
        want_json, command = a.json, a.command
        if command == "check" and a.seed is None:
            a.seed = _default_seed()
        if command == "check" and a.cases < 0:
            raise _Usage("--cases must be non-negative")
        inputs = {k: v for k, v in vars(a).items() if k not in ("run", "json", "command")}
        text, result, code = a.run(a)
    except _Usage as exc:
        return _fail(want_json, command, inputs, "usage", str(exc), EXIT_USAGE)
    except DescriptorError as exc:
        return _fail(want_json, command, inputs, type(exc).__name__, str(exc), EXIT_USAGE)
    except EulerStackError as exc:
        return _fail(want_json, command, inputs, type(exc).__name__, str(exc), EXIT_DOMAIN)
    if want_json:
        print(json.dumps({"command": command, "inputs": inputs, "result": result}, indent=2))
    else:
        print(text)
    return code


def _fail(want_json, command, inputs, kind, msg, code) -> int:
    if want_json:
        print(json.dumps({"command": command, "inputs": inputs, "error": {"type": kind, "message": msg}}, indent=2))
    else:
        print(f"error: {kind}: {msg}" if kind != "usage" else f"error: {msg}", file=sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())
